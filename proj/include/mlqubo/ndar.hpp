#pragma once

#include <algorithm>
#include <limits>
#include <numbers>
#include <ostream>
#include <string>
#include <vector>

#include "mlqubo/blackbox.hpp"
#include "mlqubo/hamming_search.hpp"
#include "mlqubo/metrics.hpp"
#include "mlqubo/problem.hpp"
#include "mlqubo/qrr.hpp"
#include "mlqubo/random.hpp"
#include "mlqubo/statevector.hpp"
#include "mlqubo/swap_network.hpp"
#include "mlqubo/timeblock.hpp"

// Noise-directed adaptive remapping around the Time-Block QAOA simulator.
// Each iteration lets a black-box optimizer pick angles, a gate ordering, and
// a gauge from the pool of best-known solutions; the sampled results are
// post-processed with QRR, w-QRR and a Hamming-2 search, and the pool is
// re-gauged so the all-zeros noise attractor keeps tracking the best-known
// solution.

namespace mlqubo {

struct NdarConfig {
  int trials = 150;          // optimizer evaluations per iteration
  int shots = 1000;          // samples per evaluation
  int k = 8;                 // time-block physical depth
  int p = 1;                 // algorithmic depth
  int max_iterations = 10;
  int stall_limit = 2;       // unimproved iterations before convergence
  int preprocess_samples = 10000;
  int pool_size = 4;
  int ordering_options = 8;  // size of the gate-ordering menu
  NoiseConfig noise;
  SearchStrategy strategy = SearchStrategy::Tpe;
  bool adaptive_gauge = true;  // false: fixed identity gauge (ablation)
  std::uint64_t seed = 0;

  void validate() const {
    if (trials < 1 || shots < 1)
      throw std::invalid_argument("trials and shots must be >= 1");
    if (p < 1) throw std::invalid_argument("depth must be >= 1");
    if (max_iterations < 1 || stall_limit < 1)
      throw std::invalid_argument("iteration limits must be >= 1");
    if (pool_size < 1) throw std::invalid_argument("pool size must be >= 1");
    noise.validate();
  }
};

// Stage-wise costs of one iteration, all in the original (ungauged) frame.
struct NdarIterationRecord {
  int iteration = 0;
  double raw_best = 0.0;   // best sampled energy across the trials
  double qrr = 0.0;
  double wqrr = 0.0;
  double hdqls = 0.0;
  double cumulative_best = 0.0;
  Bits gauge;              // gauge of the best trial in this iteration
};

struct NdarState {
  int iterations = 0;
  GaugeVector gauge;               // gauge of the last best trial
  std::vector<Bitstring> pool;     // best-cost distinct solutions, ascending
  Bitstring best;
  std::vector<NdarIterationRecord> trajectory;
  std::string error;
};

// Best of n_random uniform random assignments, returned as the initial
// gauge: after apply_gauge, the all-zeros state evaluates to that best cost.
inline GaugeVector preprocess_gauge(const IsingHamiltonian& h, int n_random,
                                    std::uint64_t seed) {
  if (n_random < 1) throw std::invalid_argument("need n_random >= 1");
  auto rng = make_rng(seed);
  Bits best;
  double best_energy = std::numeric_limits<double>::infinity();
  for (int k = 0; k < n_random; ++k) {
    Bits x = random_bits(h.n, rng);
    const double e = eval_ising(h, x);
    if (e < best_energy) {
      best_energy = e;
      best = std::move(x);
    }
  }
  return GaugeVector(std::move(best));
}

namespace detail {

// Fixed menu of gate orderings: identity plus seeded shuffles.
inline std::vector<std::vector<int>> ordering_menu(int n, int options,
                                                   std::uint64_t seed) {
  std::vector<std::vector<int>> menu;
  menu.push_back(identity_ordering(n));
  auto rng = make_rng(seed, 0x0e0eull);
  for (int k = 1; k < options; ++k) {
    auto order = identity_ordering(n);
    std::shuffle(order.begin(), order.end(), rng);
    menu.push_back(std::move(order));
  }
  return menu;
}

inline void insert_into_pool(std::vector<Bitstring>& pool, const Bitstring& x,
                             int pool_size) {
  for (const auto& member : pool)
    if (member.bits == x.bits) return;
  pool.push_back(x);
  std::stable_sort(pool.begin(), pool.end(),
                   [](const Bitstring& a, const Bitstring& b) {
                     return a.cost->value < b.cost->value;
                   });
  if (static_cast<int>(pool.size()) > pool_size)
    pool.resize(static_cast<std::size_t>(pool_size));
}

}  // namespace detail

// The full extended-NDAR loop. Returns the overall best solution (original
// frame) along with the per-iteration ledger.
inline std::pair<Bitstring, NdarState> ndar_solve(const IsingHamiltonian& h,
                                                  const NdarConfig& cfg) {
  cfg.validate();
  if (h.n > kStatevectorCap)
    throw std::invalid_argument("NDAR backend capped at 20 qubits");

  NdarState state;
  const GaugeVector identity = GaugeVector::identity(h.n);

  // iteration 0 gauge from random preprocessing
  const GaugeVector g0 =
      preprocess_gauge(h, cfg.preprocess_samples, mix_seed(cfg.seed, 0x9e0));
  Bitstring seed_solution(g0.g, CostModel::Ising, eval_ising(h, g0.g));
  state.pool.push_back(seed_solution);
  state.best = seed_solution;
  state.gauge = cfg.adaptive_gauge ? g0 : identity;

  const auto menu =
      detail::ordering_menu(h.n, std::max(1, cfg.ordering_options), cfg.seed);

  int stall = 0;
  for (int iter = 0; iter < cfg.max_iterations; ++iter) {
    const std::uint64_t iter_seed = mix_seed(cfg.seed, 0x17e4 + iter);

    SearchSpace space;
    for (int l = 0; l < cfg.p; ++l)
      space.continuous.push_back(
          {"gamma" + std::to_string(l), -std::numbers::pi, std::numbers::pi});
    for (int l = 0; l < cfg.p; ++l)
      space.continuous.push_back({"beta" + std::to_string(l), 0.0,
                                  std::numbers::pi});
    space.categorical.push_back(
        {"ordering", static_cast<int>(menu.size())});
    space.categorical.push_back(
        {"gauge", static_cast<int>(state.pool.size())});

    std::vector<TrialRecord> history;
    double best_trial_value = std::numeric_limits<double>::infinity();
    SampleSet best_trial_samples;
    GaugeVector best_trial_gauge = identity;
    Bitstring raw_best;  // best sampled solution this iteration, original frame

    for (int trial = 0; trial < cfg.trials; ++trial) {
      Point point;
      try {
        point = suggest(history, space, cfg.strategy, iter_seed);
      } catch (const std::exception& ex) {
        state.error = ex.what();
        break;
      }
      const GaugeVector gauge =
          cfg.adaptive_gauge ? GaugeVector(state.pool[point.c[1]].bits)
                             : identity;
      const IsingHamiltonian gauged = apply_gauge(h, gauge);

      QaoaParams params;
      params.gamma.assign(point.x.begin(), point.x.begin() + cfg.p);
      params.beta.assign(point.x.begin() + cfg.p, point.x.end());
      params.ordering = menu[point.c[0]];

      SampleSet samples;
      try {
        const TimeBlockPartition part = build_timeblock_partition(
            gauged, std::clamp(cfg.k, 1, h.n), params.ordering);
        const StateVector psi = simulate_tbqaoa(gauged, part, params);
        samples = sample(psi, cfg.shots, cfg.noise,
                         mix_seed(iter_seed, 0x5a0 + trial));
      } catch (const std::exception& ex) {
        state.error = ex.what();
        break;
      }

      const Bitstring trial_best = best_sample(samples, gauged);
      report(history, point, trial_best.cost->value);

      if (trial_best.cost->value < best_trial_value) {
        best_trial_value = trial_best.cost->value;
        best_trial_samples = samples;
        best_trial_gauge = gauge;
      }
      // un-gauge and track the raw best across all trials
      const Bits original = apply_gauge_to_bits(trial_best.bits, gauge);
      const double original_cost = eval_ising(h, original);
      if (!raw_best.cost || original_cost < raw_best.cost->value)
        raw_best = Bitstring(original, CostModel::Ising, original_cost);
    }
    if (!state.error.empty()) break;  // best-so-far preserved

    const IsingHamiltonian gauged_best = apply_gauge(h, best_trial_gauge);
    NdarIterationRecord rec;
    rec.iteration = iter;
    rec.gauge = best_trial_gauge.g;
    rec.raw_best = raw_best.cost->value;

    Bitstring qrr_sol, wqrr_sol;
    try {
      const CorrelationMatrix corr = correlation_matrix(best_trial_samples);
      qrr_sol = qrr_round(corr, gauged_best);
      wqrr_sol = wqrr_round(corr, gauged_best);
    } catch (const std::exception& ex) {
      state.error = ex.what();
      break;
    }
    // back to the original frame
    qrr_sol.bits = apply_gauge_to_bits(qrr_sol.bits, best_trial_gauge);
    qrr_sol.cost = EvaluatedCost{CostModel::Ising, eval_ising(h, qrr_sol.bits)};
    wqrr_sol.bits = apply_gauge_to_bits(wqrr_sol.bits, best_trial_gauge);
    wqrr_sol.cost =
        EvaluatedCost{CostModel::Ising, eval_ising(h, wqrr_sol.bits)};
    rec.qrr = qrr_sol.cost->value;
    rec.wqrr = wqrr_sol.cost->value;

    // Hamming-2 polish of the best candidate of this iteration
    Bitstring stage_best = raw_best;
    if (qrr_sol.cost->value < stage_best.cost->value) stage_best = qrr_sol;
    if (wqrr_sol.cost->value < stage_best.cost->value) stage_best = wqrr_sol;
    const Bitstring polished = hdqls(h, stage_best);
    rec.hdqls = polished.cost->value;

    for (const auto& candidate : {raw_best, qrr_sol, wqrr_sol, polished})
      detail::insert_into_pool(state.pool, candidate, cfg.pool_size);

    const double previous_best = state.best.cost->value;
    if (state.pool.front().cost->value < previous_best - 1e-12) {
      state.best = state.pool.front();
      stall = 0;
    } else {
      ++stall;
    }
    rec.cumulative_best = state.best.cost->value;
    state.trajectory.push_back(std::move(rec));
    state.gauge = cfg.adaptive_gauge ? GaugeVector(state.best.bits) : identity;
    state.iterations = iter + 1;
    if (stall >= cfg.stall_limit) break;
  }
  return {state.best, state};
}

// Stage costs per iteration as CSV rows "iteration,stage,cost[,ar]"; the AR
// column appears when the spectrum extrema are supplied.
inline void write_stage_ledger(std::ostream& out, const NdarState& state,
                               const double* c_min = nullptr,
                               const double* c_max = nullptr) {
  const bool with_ar = c_min && c_max;
  out << "iteration,stage,cost" << (with_ar ? ",ar" : "") << '\n';
  auto row = [&](int iter, const char* stage, double cost) {
    out << iter << ',' << stage << ',' << cost;
    if (with_ar)
      out << ','
          << approximation_ratio(cost, *c_min, *c_max, OptSense::Minimize);
    out << '\n';
  };
  for (const auto& rec : state.trajectory) {
    row(rec.iteration, "raw", rec.raw_best);
    row(rec.iteration, "qrr", rec.qrr);
    row(rec.iteration, "wqrr", rec.wqrr);
    row(rec.iteration, "hdqls", rec.hdqls);
    row(rec.iteration, "best", rec.cumulative_best);
  }
}

}  // namespace mlqubo
