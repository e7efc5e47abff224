#pragma once

#include <chrono>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "mlqubo/brute_force.hpp"
#include "mlqubo/instances.hpp"
#include "mlqubo/io.hpp"
#include "mlqubo/metrics.hpp"
#include "mlqubo/ndar.hpp"
#include "mlqubo/subsolvers.hpp"
#include "mlqubo/vcycle.hpp"

// End-to-end orchestration: load or generate a problem, run a direct
// subsolver or the multilevel V-cycle across seeds, score against a
// reference spectrum, and persist records and plot data.

namespace mlqubo {

// Cost extrema used as AR denominators. Exact (brute force) below the
// enumeration cap; otherwise taken from a sidecar file, with missing pieces
// estimated by long annealing runs (and labeled as such).
struct Reference {
  double c_min = 0.0;
  double c_max = 0.0;
  std::optional<Bits> best_bits;
  std::string source;
};

namespace detail {

inline MaxCutGraph negated(const MaxCutGraph& g) {
  std::vector<Edge> edges = g.edges;
  for (auto& e : edges) e.w = -e.w;
  return MaxCutGraph(g.n, std::move(edges));
}

inline double sa_best_cut(const MaxCutGraph& g, std::uint64_t seed,
                          int restarts = 4, int sweeps = 20000) {
  const auto [ising, rec] = maxcut_to_ising(g);
  SubsolverBudget budget;
  budget.max_sweeps = sweeps;
  budget.seed = seed;
  const Bitstring sol = simulated_annealing(ising, budget, restarts);
  return eval_cut(g, sol.bits);
}

}  // namespace detail

inline Reference brute_force_reference(const MaxCutGraph& g) {
  const BruteForceResult res = brute_force(g);
  Reference ref;
  ref.c_min = res.c_min;
  ref.c_max = res.c_max;
  ref.best_bits = res.argbest.bits;
  ref.source = "brute_force";
  return ref;
}

// Long annealing runs on the graph and its negation estimate both extrema.
inline Reference sa_reference(const MaxCutGraph& g, std::uint64_t seed = 1) {
  Reference ref;
  ref.c_max = detail::sa_best_cut(g, mix_seed(seed, 1));
  ref.c_min = -detail::sa_best_cut(detail::negated(g), mix_seed(seed, 2));
  ref.source = "sa_estimate";
  return ref;
}

// Sidecar JSON: {"c_max": <best known cut>, "c_min": <optional>,
// "best_bitstring": "<optional 0/1 string>"}.
inline Reference load_reference_file(const std::string& path,
                                     const MaxCutGraph& g) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open reference file " + path);
  nlohmann::json j;
  in >> j;
  Reference ref;
  ref.c_max = j.at("c_max").get<double>();
  if (j.contains("c_min")) {
    ref.c_min = j.at("c_min").get<double>();
    ref.source = "file";
  } else {
    ref.c_min = -detail::sa_best_cut(detail::negated(g), 2);
    ref.source = "file+sa_estimate";
  }
  if (j.contains("best_bitstring"))
    ref.best_bits = string_to_bits(j.at("best_bitstring").get<std::string>());
  return ref;
}

inline Reference resolve_reference(const MaxCutGraph& g,
                                   const std::string& path) {
  if (!path.empty()) return load_reference_file(path, g);
  if (g.n <= kBruteForceLimit) return brute_force_reference(g);
  return sa_reference(g);
}

struct RunConfig {
  std::string input_path;        // graph or QUBO file
  std::string format = "maxcut";  // "maxcut" | "qubo"
  std::string pipeline = "sa";    // sa|tabu|greedy|bm2|ndar or mlvl:<subsolver>
  int mss = 82;
  int mur = 3;
  int coarsest = 16;
  int embed_d = 2;
  int embed_iters = 20;
  SubsolverBudget budget;
  NdarConfig ndar;
  std::vector<std::uint64_t> seeds = {0};
  std::string reference_path;  // sidecar; empty -> brute force or SA estimate
  std::string out_dir;         // empty -> nothing persisted

  nlohmann::json to_json() const {
    return {{"input", input_path},
            {"format", format},
            {"pipeline", pipeline},
            {"mss", mss},
            {"mur", mur},
            {"coarsest", coarsest},
            {"embed_d", embed_d},
            {"embed_iters", embed_iters},
            {"budget_seconds", std::isfinite(budget.max_seconds)
                                   ? nlohmann::json(budget.max_seconds)
                                   : nlohmann::json()},
            {"budget_sweeps", budget.max_sweeps},
            {"trials", ndar.trials},
            {"shots", ndar.shots},
            {"k", ndar.k},
            {"p", ndar.p},
            {"pdamp", ndar.noise.p_damp},
            {"seeds", seeds},
            {"reference", reference_path}};
  }
};

struct SeedResult {
  std::uint64_t seed = 0;
  bool ok = false;
  std::string error;
  double cut = 0.0;
  double ar = 0.0;
  std::optional<double> jaccard;
  long long subsolver_calls = 0;
  double wall_ms = 0.0;
  Bits bits;
  std::vector<NdarIterationRecord> ledger;  // NDAR pipelines only
  std::vector<double> iteration_cuts;       // cumulative best per iteration
  std::optional<nlohmann::json> vcycle_report;  // MLVL pipelines only
};

struct RunRecord {
  nlohmann::json config_echo;
  Reference reference;
  std::string instance_id;
  int graph_nodes = 0;
  std::vector<SeedResult> per_seed;
  double mean_ar = 0.0;
  double max_ar = 0.0;
  double ar_std3 = 0.0;  // 3x empirical standard deviation

  nlohmann::json to_json() const {
    nlohmann::json j;
    j["config"] = config_echo;
    j["instance"] = instance_id;
    j["nodes"] = graph_nodes;
    j["reference"] = {{"c_min", reference.c_min},
                      {"c_max", reference.c_max},
                      {"source", reference.source}};
    if (reference.best_bits)
      j["reference"]["best_bitstring"] = bits_to_string(*reference.best_bits);
    auto& seeds = j["seeds"] = nlohmann::json::array();
    for (const auto& s : per_seed) {
      nlohmann::json row = {{"seed", s.seed},
                            {"ok", s.ok},
                            {"cut", s.cut},
                            {"ar", s.ar},
                            {"subsolver_calls", s.subsolver_calls},
                            {"wall_ms", s.wall_ms},
                            {"bitstring", bits_to_string(s.bits)}};
      if (s.jaccard) row["jaccard"] = *s.jaccard;
      if (!s.error.empty()) row["error"] = s.error;
      seeds.push_back(std::move(row));
    }
    j["aggregate"] = {{"mean_ar", mean_ar},
                      {"max_ar", max_ar},
                      {"ar_std3", ar_std3}};
    return j;
  }
};

inline Subsolver make_subsolver(const std::string& name,
                                const NdarConfig& ndar_template) {
  if (name == "sa")
    return [](const IsingHamiltonian& h, const SubsolverBudget& b) {
      return simulated_annealing(h, b);
    };
  if (name == "tabu")
    return [](const IsingHamiltonian& h, const SubsolverBudget& b) {
      return tabu_search(h, b);
    };
  if (name == "greedy")
    return [](const IsingHamiltonian& h, const SubsolverBudget& b) {
      auto rng = make_rng(b.seed);
      return greedy_local_search(h, Bitstring(random_bits(h.n, rng)));
    };
  if (name == "bm2")
    return [](const IsingHamiltonian& h, const SubsolverBudget& b) {
      return burer_monteiro_on_ising(h, b);
    };
  if (name == "ndar")
    return [ndar_template](const IsingHamiltonian& h,
                           const SubsolverBudget& b) {
      NdarConfig cfg = ndar_template;
      cfg.seed = b.seed;
      return ndar_solve(h, cfg).first;
    };
  throw std::invalid_argument("unknown subsolver: " + name);
}

namespace detail {

struct PipelineOutcome {
  Bits bits;
  double cut = 0.0;
  long long calls = 0;
  std::vector<NdarIterationRecord> ledger;
  std::vector<double> iteration_cuts;
  std::optional<nlohmann::json> vcycle_report;
};

inline PipelineOutcome execute_pipeline(const MaxCutGraph& g,
                                        const RunConfig& cfg,
                                        std::uint64_t seed) {
  PipelineOutcome out;
  if (cfg.pipeline.rfind("mlvl:", 0) == 0) {
    const std::string sub = cfg.pipeline.substr(5);
    if (sub == "ndar" &&
        (cfg.mss > kStatevectorCap ||
         (g.n > kBruteForceLimit && cfg.coarsest > kStatevectorCap)))
      throw std::invalid_argument(
          "the ndar subsolver needs MSS and the coarsest size within the "
          "statevector cap");
    RefinementConfig rcfg;
    rcfg.mss = cfg.mss;
    rcfg.mur = cfg.mur;
    rcfg.subsolver = make_subsolver(sub, cfg.ndar);
    rcfg.budget = cfg.budget;
    rcfg.budget.seed = seed;
    rcfg.seed = seed;
    auto [sol, report] =
        v_cycle(g, rcfg, cfg.coarsest, cfg.embed_d, cfg.embed_iters, seed);
    if (!report.error.empty())
      throw std::runtime_error("subsolver failed: " + report.error);
    out.bits = sol.bits;
    out.cut = sol.cost->value;
    out.calls = report.total_calls;
    out.vcycle_report = report.to_json();
    return out;
  }
  if (cfg.pipeline == "ndar") {
    const auto [ising, rec] = maxcut_to_ising(g);
    NdarConfig ncfg = cfg.ndar;
    ncfg.seed = seed;
    auto [sol, state] = ndar_solve(ising, ncfg);
    if (!state.error.empty())
      throw std::runtime_error("ndar failed: " + state.error);
    out.bits = sol.bits;
    out.cut = eval_cut(g, sol.bits);
    out.calls = 1;
    out.ledger = state.trajectory;
    for (const auto& row : state.trajectory)
      out.iteration_cuts.push_back(rec.scale * row.cumulative_best +
                                   rec.offset);
    return out;
  }
  const Subsolver solver = make_subsolver(cfg.pipeline, cfg.ndar);
  const auto [ising, rec] = maxcut_to_ising(g);
  SubsolverBudget budget = cfg.budget;
  budget.seed = seed;
  const Bitstring sol = solver(ising, budget);
  out.bits = sol.bits;
  out.cut = eval_cut(g, sol.bits);
  out.calls = 1;
  return out;
}

}  // namespace detail

inline MaxCutGraph load_problem(const RunConfig& cfg) {
  if (cfg.format == "maxcut") return read_maxcut_file(cfg.input_path);
  if (cfg.format == "qubo")
    return qubo_to_maxcut(read_qubo_file(cfg.input_path)).first;
  throw std::invalid_argument("unknown format: " + cfg.format);
}

inline RunRecord run(const RunConfig& cfg, const MaxCutGraph& g) {
  RunRecord record;
  record.config_echo = cfg.to_json();
  record.instance_id = cfg.input_path.empty() ? "inline" : cfg.input_path;
  record.graph_nodes = g.n;
  record.reference = resolve_reference(g, cfg.reference_path);

  std::vector<double> ars;
  for (const std::uint64_t seed : cfg.seeds) {
    SeedResult res;
    res.seed = seed;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      auto outcome = detail::execute_pipeline(g, cfg, seed);
      res.bits = std::move(outcome.bits);
      res.cut = outcome.cut;
      res.subsolver_calls = outcome.calls;
      res.ledger = std::move(outcome.ledger);
      res.iteration_cuts = std::move(outcome.iteration_cuts);
      res.vcycle_report = std::move(outcome.vcycle_report);
      res.ar = approximation_ratio(res.cut, record.reference.c_min,
                                   record.reference.c_max, OptSense::Maximize);
      if (record.reference.best_bits)
        res.jaccard =
            jaccard_cut_similarity(g, res.bits, *record.reference.best_bits);
      res.ok = true;
      ars.push_back(res.ar);
    } catch (const std::exception& ex) {
      res.error = ex.what();
    }
    res.wall_ms = std::chrono::duration<double, std::milli>(
                      std::chrono::steady_clock::now() - t0)
                      .count();
    record.per_seed.push_back(std::move(res));
  }

  if (!ars.empty()) {
    double mean = 0.0;
    for (double a : ars) mean += a;
    mean /= static_cast<double>(ars.size());
    record.mean_ar = mean;
    record.max_ar = *std::max_element(ars.begin(), ars.end());
    if (ars.size() > 1) {
      double var = 0.0;
      for (double a : ars) var += (a - mean) * (a - mean);
      var /= static_cast<double>(ars.size() - 1);
      record.ar_std3 = 3.0 * std::sqrt(var);
    }
  }
  return record;
}

inline RunRecord run(const RunConfig& cfg) { return run(cfg, load_problem(cfg)); }

// Plot data files:
//   ar_vs_iteration.csv  one row per (instance, seed, iteration) with the
//                        cumulative-best AR from the NDAR ledger
//   summary.csv          one row per (instance, pipeline, seed)
inline void emit_plot_data(const std::vector<RunRecord>& records,
                           const std::string& dir) {
  std::filesystem::create_directories(dir);
  {
    std::ofstream out(dir + "/ar_vs_iteration.csv");
    out << "instance,seed,iteration,ar\n";
    for (const auto& rec : records)
      for (const auto& seed : rec.per_seed)
        for (std::size_t it = 0; it < seed.iteration_cuts.size(); ++it)
          out << rec.instance_id << ',' << seed.seed << ',' << it << ','
              << approximation_ratio(seed.iteration_cuts[it],
                                     rec.reference.c_min, rec.reference.c_max,
                                     OptSense::Maximize)
              << '\n';
  }
  {
    std::ofstream out(dir + "/summary.csv");
    out << "instance,pipeline,seed,jaccard,ar,subsolver_calls\n";
    for (const auto& rec : records)
      for (const auto& seed : rec.per_seed) {
        if (!seed.ok) continue;
        out << rec.instance_id << ','
            << rec.config_echo.at("pipeline").get<std::string>() << ','
            << seed.seed << ',' << (seed.jaccard ? *seed.jaccard : -1.0) << ','
            << seed.ar << ',' << seed.subsolver_calls << '\n';
      }
  }
}

inline void persist_run(const RunRecord& record, const std::string& dir) {
  std::filesystem::create_directories(dir);
  std::ofstream out(dir + "/run_record.json");
  out << record.to_json().dump(2) << '\n';
  for (const auto& seed : record.per_seed) {
    if (!seed.ledger.empty()) {
      NdarState state;
      state.trajectory = seed.ledger;
      std::ofstream ledger(dir + "/ledger_seed" + std::to_string(seed.seed) +
                           ".csv");
      write_stage_ledger(ledger, state);
    }
    if (seed.vcycle_report) {
      std::ofstream vout(dir + "/vcycle_seed" + std::to_string(seed.seed) +
                         ".json");
      vout << seed.vcycle_report->dump(2) << '\n';
    }
  }
}

}  // namespace mlqubo
