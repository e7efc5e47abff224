#pragma once

#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>

#include "mlqubo/problem.hpp"
#include "mlqubo/random.hpp"

// Classical heuristics used both as refinement subsolvers and as whole-graph
// baselines. All of them are deterministic under (instance, budget, seed) and
// enforce time limits cooperatively between sweeps.

namespace mlqubo {

struct SubsolverBudget {
  double max_seconds = std::numeric_limits<double>::infinity();
  int max_sweeps = 1000;
  std::uint64_t seed = 0;
};

using Subsolver =
    std::function<Bitstring(const IsingHamiltonian&, const SubsolverBudget&)>;

namespace detail {

class Deadline {
 public:
  explicit Deadline(double seconds)
      : enabled_(std::isfinite(seconds)),
        end_(std::chrono::steady_clock::now() +
             std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                 std::chrono::duration<double>(
                     enabled_ ? seconds : 0.0))) {}
  bool expired() const {
    return enabled_ && std::chrono::steady_clock::now() >= end_;
  }

 private:
  bool enabled_;
  std::chrono::steady_clock::time_point end_;
};

// Mutable spin state with O(degree) single-flip energy deltas.
struct FlipState {
  const IsingHamiltonian* h;
  Adjacency adj;
  Bits x;
  std::vector<double> local;  // local_i = h_i + sum_j J_ij s_j
  double energy;

  FlipState(const IsingHamiltonian& ham, Bits init)
      : h(&ham), adj(build_coupling_adjacency(ham)), x(std::move(init)) {
    recompute();
  }

  void recompute() {
    local.assign(static_cast<std::size_t>(h->n), 0.0);
    for (int i = 0; i < h->n; ++i) {
      local[i] = h->fields[i];
      for (const auto& [j, v] : adj[i]) local[i] += v * spin_of(x[j]);
    }
    energy = eval_ising(*h, x);
  }

  double flip_delta(int i) const { return -2.0 * spin_of(x[i]) * local[i]; }

  void flip(int i) {
    energy += flip_delta(i);
    const int old_spin = spin_of(x[i]);
    x[i] ^= 1u;
    for (const auto& [j, v] : adj[i]) local[j] -= 2.0 * v * old_spin;
  }
};

// T_hot chosen so that ~80% of uphill moves from random states are accepted.
inline double estimate_hot_temperature(const IsingHamiltonian& h,
                                       std::mt19937_64& rng) {
  double uphill_sum = 0.0;
  int uphill_count = 0;
  FlipState state(h, random_bits(h.n, rng));
  std::uniform_int_distribution<int> site(0, h.n - 1);
  for (int trial = 0; trial < 100; ++trial) {
    if (trial % 25 == 0) {
      state.x = random_bits(h.n, rng);
      state.recompute();
    }
    const double d = state.flip_delta(site(rng));
    if (d > 0.0) {
      uphill_sum += d;
      ++uphill_count;
    }
  }
  if (uphill_count == 0) return 1.0;
  return (uphill_sum / uphill_count) / -std::log(0.8);
}

}  // namespace detail

// Single-spin-flip Metropolis with a geometric schedule from T_hot down to
// 1e-3 * T_hot. Each restart is an independent chain; the best-ever state
// across restarts is returned.
inline Bitstring simulated_annealing(const IsingHamiltonian& h,
                                     const SubsolverBudget& b,
                                     int restarts = 1) {
  auto rng = make_rng(b.seed);
  detail::Deadline deadline(b.max_seconds);
  Bits best;
  double best_energy = std::numeric_limits<double>::infinity();
  std::uniform_int_distribution<int> site(0, h.n - 1);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  const double t_hot = detail::estimate_hot_temperature(h, rng);
  const double t_cold = 1e-3 * t_hot;
  const int sweeps = std::max(1, b.max_sweeps);
  const double decay =
      sweeps > 1 ? std::pow(t_cold / t_hot, 1.0 / (sweeps - 1)) : 1.0;

  for (int restart = 0; restart < restarts; ++restart) {
    detail::FlipState state(h, random_bits(h.n, rng));
    if (state.energy < best_energy) {
      best_energy = state.energy;
      best = state.x;
    }
    double temp = t_hot;
    for (int sweep = 0; sweep < sweeps; ++sweep) {
      for (int attempt = 0; attempt < h.n; ++attempt) {
        const int i = site(rng);
        const double d = state.flip_delta(i);
        if (d <= 0.0 || unit(rng) < std::exp(-d / temp)) {
          state.flip(i);
          if (state.energy < best_energy) {
            best_energy = state.energy;
            best = state.x;
          }
        }
      }
      temp *= decay;
      if (deadline.expired()) break;
    }
    if (deadline.expired()) break;
  }
  return Bitstring(std::move(best), CostModel::Ising, best_energy);
}

// Steepest 1-flip tabu search with aspiration: a tabu move is allowed when it
// beats the best energy seen so far. budget.max_sweeps counts moves.
inline Bitstring tabu_search(const IsingHamiltonian& h,
                             const SubsolverBudget& b, int tenure = 10) {
  if (tenure < 1) throw std::invalid_argument("tabu tenure must be >= 1");
  auto rng = make_rng(b.seed);
  detail::Deadline deadline(b.max_seconds);
  detail::FlipState state(h, random_bits(h.n, rng));
  Bits best = state.x;
  double best_energy = state.energy;
  std::vector<int> tabu_until(static_cast<std::size_t>(h.n), -1);

  const int moves = std::max(1, b.max_sweeps);
  for (int it = 0; it < moves; ++it) {
    int chosen = -1;
    double chosen_delta = std::numeric_limits<double>::infinity();
    for (int i = 0; i < h.n; ++i) {
      const double d = state.flip_delta(i);
      const bool tabu = tabu_until[i] > it;
      const bool aspires = state.energy + d < best_energy - 1e-12;
      if ((tabu && !aspires) || d >= chosen_delta) continue;
      chosen = i;
      chosen_delta = d;
    }
    if (chosen < 0) break;  // every move tabu and none aspires
    state.flip(chosen);
    tabu_until[chosen] = it + tenure;
    if (state.energy < best_energy) {
      best_energy = state.energy;
      best = state.x;
    }
    if (deadline.expired()) break;
  }
  return Bitstring(std::move(best), CostModel::Ising, best_energy);
}

// Flips the single best improving variable until 1-flip-local-optimal.
inline Bitstring greedy_local_search(const IsingHamiltonian& h,
                                     const Bitstring& x0) {
  detail::FlipState state(h, x0.bits);
  for (;;) {
    int best_i = -1;
    double best_d = 0.0;
    for (int i = 0; i < h.n; ++i) {
      const double d = state.flip_delta(i);
      if (d < best_d) {
        best_d = d;
        best_i = i;
      }
    }
    if (best_i < 0) break;
    state.flip(best_i);
  }
  return Bitstring(state.x, CostModel::Ising, state.energy);
}

// Rank-2 relaxation: spins become angles on the unit circle, the relaxed
// objective sum_ij w_ij (1 - cos(t_i - t_j)) / 2 is maximized by coordinate
// updates, and random diameters round the circle back to a cut. Each rounded
// solution is polished with greedy local search.
inline Bitstring burer_monteiro_rank2(const MaxCutGraph& g,
                                      const SubsolverBudget& b,
                                      int rounding_attempts = 8,
                                      std::vector<double>* objective_trace =
                                          nullptr) {
  if (rounding_attempts < 1)
    throw std::invalid_argument("need at least one rounding attempt");
  auto rng = make_rng(b.seed);
  detail::Deadline deadline(b.max_seconds);
  const Adjacency adj = build_adjacency(g);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  std::vector<double> theta(static_cast<std::size_t>(g.n));
  for (auto& t : theta) t = angle(rng);

  auto objective = [&] {
    double total = 0.0;
    for (const auto& e : g.edges)
      total += e.w * (1.0 - std::cos(theta[e.u] - theta[e.v])) / 2.0;
    return total;
  };

  double prev = objective();
  if (objective_trace) objective_trace->push_back(prev);
  const int sweep_cap = std::min(b.max_sweeps, 1000);
  for (int sweep = 0; sweep < sweep_cap; ++sweep) {
    for (int i = 0; i < g.n; ++i) {
      double cx = 0.0, cy = 0.0;
      for (const auto& [j, w] : adj[i]) {
        cx += w * std::cos(theta[j]);
        cy += w * std::sin(theta[j]);
      }
      if (cx * cx + cy * cy > 1e-30) theta[i] = std::atan2(-cy, -cx);
    }
    const double cur = objective();
    if (objective_trace) objective_trace->push_back(cur);
    const bool converged = cur - prev < 1e-8;
    prev = cur;
    if (converged || deadline.expired()) break;
  }

  const auto [ising, rec] = maxcut_to_ising(g);
  Bits best;
  double best_cut = -std::numeric_limits<double>::infinity();
  std::uniform_real_distribution<double> diameter(0.0, std::numbers::pi);
  for (int attempt = 0; attempt < rounding_attempts; ++attempt) {
    const double alpha = diameter(rng);
    Bits x(static_cast<std::size_t>(g.n));
    for (int i = 0; i < g.n; ++i) {
      double rel = std::fmod(theta[i] - alpha, 2.0 * std::numbers::pi);
      if (rel < 0.0) rel += 2.0 * std::numbers::pi;
      x[i] = rel < std::numbers::pi ? 0 : 1;
    }
    const Bitstring polished = greedy_local_search(ising, Bitstring(x));
    const double cut = eval_cut(g, polished.bits);
    if (cut > best_cut) {
      best_cut = cut;
      best = polished.bits;
    }
  }
  return Bitstring(std::move(best), CostModel::Cut, best_cut);
}

// Field-carrying Ising instances are handed to the Max-Cut-only rank-2 solver
// through the standard auxiliary-spin trick: J'_{i,n} = h_i, then
// x_i = y_i XOR y_n.
inline Bitstring burer_monteiro_on_ising(const IsingHamiltonian& h,
                                         const SubsolverBudget& b,
                                         int rounding_attempts = 8) {
  bool has_fields = false;
  for (double f : h.fields)
    if (f != 0.0) has_fields = true;
  std::vector<Edge> edges;
  for (const auto& c : h.couplings)
    if (c.value != 0.0) edges.push_back({c.i, c.j, c.value});
  if (!has_fields) {
    if (edges.empty())
      return Bitstring(Bits(static_cast<std::size_t>(h.n), 0),
                       CostModel::Ising, eval_ising(h, Bits(h.n, 0)));
    MaxCutGraph g(h.n, std::move(edges));
    Bitstring y = burer_monteiro_rank2(g, b, rounding_attempts);
    return Bitstring(y.bits, CostModel::Ising, eval_ising(h, y.bits));
  }
  for (int i = 0; i < h.n; ++i)
    if (h.fields[i] != 0.0) edges.push_back({i, h.n, h.fields[i]});
  MaxCutGraph g(h.n + 1, std::move(edges));
  Bitstring y = burer_monteiro_rank2(g, b, rounding_attempts);
  Bits x(static_cast<std::size_t>(h.n));
  for (int i = 0; i < h.n; ++i) x[i] = y.bits[i] ^ y.bits[h.n];
  const double energy = eval_ising(h, x);
  return Bitstring(std::move(x), CostModel::Ising, energy);
}

}  // namespace mlqubo
