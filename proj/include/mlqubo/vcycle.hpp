#pragma once

#include <chrono>
#include <string>
#include <vector>

#include <json.hpp>

#include "mlqubo/brute_force.hpp"
#include "mlqubo/coarsening.hpp"
#include "mlqubo/refinement.hpp"

namespace mlqubo {

struct LevelReport {
  int level = 0;
  int nodes = 0;
  double initial_cut = 0.0;  // cut after interpolation from the level above
  double final_cut = 0.0;    // cut after refinement
  int calls = 0;
  int accepted = 0;
  double wall_ms = 0.0;
};

struct VCycleReport {
  std::vector<int> level_sizes;       // finest first
  double coarsest_cut = 0.0;
  std::vector<LevelReport> levels;    // refinement records, coarsest-1 .. 0
  int total_calls = 0;
  std::vector<char> accepted_flags;   // concatenated across levels
  std::string error;
  double hierarchy_wall_ms = 0.0;
  double coarsest_wall_ms = 0.0;
  double total_wall_ms = 0.0;
  // config echo
  std::uint64_t seed = 0;
  int mss = 0, mur = 0, coarsest_size = 0, embed_d = 0, embed_iters = 0;

  nlohmann::json to_json() const {
    nlohmann::json j;
    j["level_sizes"] = level_sizes;
    j["coarsest_cut"] = coarsest_cut;
    j["total_subsolver_calls"] = total_calls;
    j["accepted"] = std::vector<int>(accepted_flags.begin(),
                                     accepted_flags.end());
    j["wall_ms"] = {{"hierarchy", hierarchy_wall_ms},
                    {"coarsest", coarsest_wall_ms},
                    {"total", total_wall_ms}};
    j["config"] = {{"seed", seed},
                   {"mss", mss},
                   {"mur", mur},
                   {"coarsest_size", coarsest_size},
                   {"embed_d", embed_d},
                   {"embed_iters", embed_iters}};
    if (!error.empty()) j["error"] = error;
    auto& levels_json = j["levels"] = nlohmann::json::array();
    for (const auto& l : levels)
      levels_json.push_back({{"level", l.level},
                             {"nodes", l.nodes},
                             {"initial_cut", l.initial_cut},
                             {"final_cut", l.final_cut},
                             {"calls", l.calls},
                             {"accepted", l.accepted},
                             {"wall_ms", l.wall_ms}});
    return j;
  }
};

namespace detail {

inline double ms_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(
             std::chrono::steady_clock::now() - t0)
      .count();
}

}  // namespace detail

// Single V-cycle: build the hierarchy, solve the coarsest graph (exactly when
// it fits under the brute-force cap, otherwise with the configured subsolver
// on the whole coarsest graph), then interpolate and refine level by level
// back to the finest graph.
inline std::pair<Bitstring, VCycleReport> v_cycle(const MaxCutGraph& g0,
                                                  const RefinementConfig& cfg,
                                                  int coarsest_size, int d,
                                                  int iters,
                                                  std::uint64_t seed) {
  cfg.validate();
  VCycleReport report;
  report.seed = seed;
  report.mss = cfg.mss;
  report.mur = cfg.mur;
  report.coarsest_size = coarsest_size;
  report.embed_d = d;
  report.embed_iters = iters;

  const auto t_start = std::chrono::steady_clock::now();
  const CoarseningHierarchy hier =
      build_hierarchy(g0, coarsest_size, d, iters, seed);
  report.hierarchy_wall_ms = detail::ms_since(t_start);
  for (const auto& level : hier.levels) report.level_sizes.push_back(level.n);

  const MaxCutGraph& coarsest = hier.levels.back();
  const auto t_coarsest = std::chrono::steady_clock::now();
  Bits solution;
  if (coarsest.n <= kBruteForceLimit) {
    solution = brute_force(coarsest).argbest.bits;
  } else {
    const auto [ising, rec] = maxcut_to_ising(coarsest);
    SubsolverBudget budget = cfg.budget;
    budget.seed = mix_seed(seed, 0xc0a5ull);
    solution = cfg.subsolver(ising, budget).bits;
  }
  report.coarsest_wall_ms = detail::ms_since(t_coarsest);
  report.coarsest_cut = eval_cut(coarsest, solution);

  for (int l = static_cast<int>(hier.levels.size()) - 2; l >= 0; --l) {
    solution = interpolate(solution, hier.maps[l]);
    LevelReport lr;
    lr.level = l;
    lr.nodes = hier.levels[l].n;
    lr.initial_cut = eval_cut(hier.levels[l], solution);
    const auto t_level = std::chrono::steady_clock::now();
    RefinementConfig level_cfg = cfg;
    level_cfg.seed = mix_seed(seed, 0x1e7eull + l);
    auto [refined, stats] =
        refine_level(hier.levels[l], Bitstring(solution), level_cfg);
    lr.wall_ms = detail::ms_since(t_level);
    solution = refined.bits;
    lr.final_cut = refined.cost->value;
    lr.calls = stats.calls;
    lr.accepted = stats.accepted;
    report.total_calls += stats.calls;
    report.accepted_flags.insert(report.accepted_flags.end(),
                                 stats.accepted_flags.begin(),
                                 stats.accepted_flags.end());
    if (!stats.error.empty() && report.error.empty())
      report.error = stats.error;
    report.levels.push_back(lr);
  }
  report.total_wall_ms = detail::ms_since(t_start);
  const double final_cut = eval_cut(g0, solution);
  return {Bitstring(std::move(solution), CostModel::Cut, final_cut),
          std::move(report)};
}

}  // namespace mlqubo
