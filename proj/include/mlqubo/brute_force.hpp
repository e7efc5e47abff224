#pragma once

#include <bit>
#include <stdexcept>

#include "mlqubo/problem.hpp"

// Exhaustive enumeration over all 2^n assignments. Serves as the oracle for
// approximation-ratio denominators and for tests; capped at n <= 24.
//
// Gray-code walk: each step flips a single bit, so the objective is updated
// in O(degree) instead of re-evaluated from scratch. Ties on the best value
// break to the lexicographically smallest bit vector.

namespace mlqubo {

inline constexpr int kBruteForceLimit = 24;

struct BruteForceResult {
  double c_min = 0.0;
  double c_max = 0.0;
  Bitstring argbest;  // argmax for QUBO/cut, argmin for Ising
};

namespace detail {

inline void check_brute_force_size(int n, int limit) {
  if (n > limit || n > kBruteForceLimit)
    throw std::invalid_argument("problem too large for brute force");
}

inline bool lex_less(const Bits& a, const Bits& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

// Enumerates assignments in Gray-code order. `delta(i, x)` must return the
// objective change of flipping bit i given the current assignment x.
template <typename DeltaFn>
BruteForceResult gray_extrema(int n, double value_of_zero, bool best_is_max,
                              DeltaFn&& delta) {
  Bits x(static_cast<std::size_t>(n), 0);
  double value = value_of_zero;
  double c_min = value, c_max = value;
  Bits arg_min = x, arg_max = x;
  const std::uint64_t total = 1ull << n;
  for (std::uint64_t step = 1; step < total; ++step) {
    const int flip = std::countr_zero(step);
    value += delta(flip, x);
    x[flip] ^= 1u;
    if (value < c_min || (value == c_min && lex_less(x, arg_min))) {
      c_min = value;
      arg_min = x;
    }
    if (value > c_max || (value == c_max && lex_less(x, arg_max))) {
      c_max = value;
      arg_max = x;
    }
  }
  BruteForceResult res;
  res.c_min = c_min;
  res.c_max = c_max;
  res.argbest = best_is_max ? Bitstring(std::move(arg_max))
                            : Bitstring(std::move(arg_min));
  return res;
}

}  // namespace detail

inline BruteForceResult brute_force(const MaxCutGraph& g,
                                    int limit = kBruteForceLimit) {
  detail::check_brute_force_size(g.n, limit);
  const Adjacency adj = build_adjacency(g);
  auto delta = [&adj](int i, const Bits& x) {
    double d = 0.0;
    for (const auto& [j, w] : adj[i]) d += (x[j] == x[i]) ? w : -w;
    return d;
  };
  BruteForceResult res = detail::gray_extrema(g.n, 0.0, true, delta);
  res.argbest.cost = EvaluatedCost{CostModel::Cut, res.c_max};
  return res;
}

inline BruteForceResult brute_force(const IsingHamiltonian& h,
                                    int limit = kBruteForceLimit) {
  detail::check_brute_force_size(h.n, limit);
  const Adjacency adj = build_coupling_adjacency(h);
  double at_zero = h.constant;  // all spins +1
  for (double f : h.fields) at_zero += f;
  for (const auto& c : h.couplings) at_zero += c.value;
  auto delta = [&adj, &h](int i, const Bits& x) {
    // flipping bit i negates spin i
    double local = h.fields[i];
    for (const auto& [j, v] : adj[i]) local += v * spin_of(x[j]);
    return -2.0 * spin_of(x[i]) * local;
  };
  BruteForceResult res = detail::gray_extrema(h.n, at_zero, false, delta);
  res.argbest.cost = EvaluatedCost{CostModel::Ising, res.c_min};
  return res;
}

inline BruteForceResult brute_force(const QuboProblem& q,
                                    int limit = kBruteForceLimit) {
  detail::check_brute_force_size(q.n, limit);
  Adjacency adj(q.n);
  std::vector<double> diag(static_cast<std::size_t>(q.n), 0.0);
  for (const auto& t : q.terms) {
    if (t.i == t.j) {
      diag[t.i] += t.q;
    } else {
      adj[t.i].emplace_back(t.j, t.q);
      adj[t.j].emplace_back(t.i, t.q);
    }
  }
  auto delta = [&adj, &diag](int i, const Bits& x) {
    double active = diag[i];
    for (const auto& [j, qv] : adj[i])
      if (x[j]) active += qv;
    return x[i] ? -active : active;
  };
  BruteForceResult res = detail::gray_extrema(q.n, 0.0, true, delta);
  res.argbest.cost = EvaluatedCost{CostModel::Qubo, res.c_max};
  return res;
}

}  // namespace mlqubo
