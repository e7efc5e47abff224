// Command-line front end: generate benchmark instances, run direct or
// multilevel pipelines across seeds, and write run records plus plot data.

#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mlqubo/harness.hpp"

namespace {

std::vector<std::uint64_t> parse_seeds(const std::string& spec) {
  std::vector<std::uint64_t> seeds;
  std::size_t pos = 0;
  while (pos < spec.size()) {
    const std::size_t comma = spec.find(',', pos);
    const std::string tok =
        spec.substr(pos, comma == std::string::npos ? comma : comma - pos);
    if (!tok.empty()) seeds.push_back(std::stoull(tok));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  if (seeds.empty()) throw CLI::ValidationError("--seeds", "no seeds given");
  return seeds;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multilevel QUBO/Max-Cut solver with classical and simulated "
               "quantum (NDAR) subsolvers"};
  app.require_subcommand(1);

  // --- run ---------------------------------------------------------------
  mlqubo::RunConfig cfg;
  std::string seeds_spec = "0";
  double budget_seconds = 0.0;
  auto* run_cmd = app.add_subcommand("run", "solve an instance across seeds");
  run_cmd->add_option("--input", cfg.input_path, "problem file")->required();
  run_cmd->add_option("--format", cfg.format, "maxcut | qubo")
      ->check(CLI::IsMember({"maxcut", "qubo"}));
  run_cmd->add_option("--pipeline", cfg.pipeline,
                      "sa | tabu | greedy | bm2 | ndar | mlvl:<subsolver>");
  run_cmd->add_option("--mss", cfg.mss, "max subproblem size");
  run_cmd->add_option("--mur", cfg.mur, "max consecutive unsuccessful refinements");
  run_cmd->add_option("--coarsest", cfg.coarsest, "coarsest level size");
  run_cmd->add_option("--embed-d", cfg.embed_d, "sphere embedding dimension");
  run_cmd->add_option("--embed-iters", cfg.embed_iters, "embedding sweeps");
  run_cmd->add_option("--seeds", seeds_spec, "comma-separated seed list");
  run_cmd->add_option("--shots", cfg.ndar.shots, "samples per NDAR trial");
  run_cmd->add_option("--trials", cfg.ndar.trials, "NDAR trials per iteration");
  run_cmd->add_option("--k", cfg.ndar.k, "time-block depth");
  run_cmd->add_option("--p", cfg.ndar.p, "QAOA depth");
  run_cmd->add_option("--pdamp", cfg.ndar.noise.p_damp,
                      "attractor damping probability");
  run_cmd->add_option("--budget-seconds", budget_seconds,
                      "wall-clock budget per subsolver call (0 = none)");
  run_cmd->add_option("--budget-sweeps", cfg.budget.max_sweeps,
                      "sweep budget per subsolver call");
  run_cmd->add_option("--reference", cfg.reference_path,
                      "sidecar JSON with known extrema");
  run_cmd->add_option("--out-dir", cfg.out_dir, "output directory");

  // --- generate ------------------------------------------------------------
  std::string gen_kind = "sk_int";
  int gen_n = 82;
  double gen_p = 0.5;
  std::uint64_t gen_seed = 0;
  std::string gen_out;
  auto* gen_cmd = app.add_subcommand("generate", "write a benchmark instance");
  gen_cmd->add_option("--kind", gen_kind, "sk_int | sk_real | gnp")
      ->check(CLI::IsMember({"sk_int", "sk_real", "gnp"}));
  gen_cmd->add_option("--n", gen_n, "node count")->required();
  gen_cmd->add_option("--edge-prob", gen_p, "edge probability (gnp)");
  gen_cmd->add_option("--seed", gen_seed, "generator seed");
  gen_cmd->add_option("--out", gen_out, "output edge-list file")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen_cmd->parsed()) {
      const auto g = mlqubo::generate_instance(
          mlqubo::instance_kind_from_string(gen_kind), gen_n, gen_p, gen_seed);
      mlqubo::write_maxcut_file(gen_out, g);
      std::cout << "wrote " << gen_out << " (" << g.n << " nodes, "
                << g.edges.size() << " edges)\n";
      return 0;
    }

    cfg.seeds = parse_seeds(seeds_spec);
    if (budget_seconds > 0.0) cfg.budget.max_seconds = budget_seconds;
    const mlqubo::RunRecord record = mlqubo::run(cfg);
    if (!cfg.out_dir.empty()) {
      mlqubo::persist_run(record, cfg.out_dir);
      mlqubo::emit_plot_data({record}, cfg.out_dir);
    }
    std::cout << record.to_json().dump(2) << '\n';

    bool any_ok = false;
    for (const auto& seed : record.per_seed) any_ok |= seed.ok;
    return any_ok ? 0 : 1;
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << '\n';
    return 1;
  }
}
