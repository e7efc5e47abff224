#pragma once

#include <vector>

#include "mlqubo/problem.hpp"

namespace mlqubo {

// Hamming-distance-2 quadratic local search: a single exhaustive pass over
// the closed ball around x (the 1 + n + n(n-1)/2 assignments within distance
// two). Returns the best candidate, x itself when nothing improves. Energy
// deltas are evaluated incrementally:
//   flip i:   d_i = -2 s_i (h_i + sum_j J_ij s_j)
//   flip i,j: d_ij = d_i + d_j + 4 J_ij s_i s_j
inline Bitstring hdqls(const IsingHamiltonian& h, const Bitstring& x) {
  if (static_cast<int>(x.bits.size()) != h.n)
    throw std::invalid_argument("assignment length mismatch");
  const double base = eval_ising(h, x.bits);

  std::vector<double> local(static_cast<std::size_t>(h.n));
  for (int i = 0; i < h.n; ++i) local[i] = h.fields[i];
  for (const auto& c : h.couplings) {
    local[c.i] += c.value * spin_of(x.bits[c.j]);
    local[c.j] += c.value * spin_of(x.bits[c.i]);
  }
  std::vector<double> single(static_cast<std::size_t>(h.n));
  for (int i = 0; i < h.n; ++i)
    single[i] = -2.0 * spin_of(x.bits[i]) * local[i];

  double best_delta = 0.0;
  int best_i = -1, best_j = -1;
  for (int i = 0; i < h.n; ++i) {
    if (single[i] < best_delta) {
      best_delta = single[i];
      best_i = i;
      best_j = -1;
    }
  }
  // pair flips: start from d_i + d_j, correct the doubly-counted coupling
  std::vector<std::vector<double>> pair_delta(
      static_cast<std::size_t>(h.n),
      std::vector<double>(static_cast<std::size_t>(h.n), 0.0));
  for (int i = 0; i < h.n; ++i)
    for (int j = i + 1; j < h.n; ++j)
      pair_delta[i][j] = single[i] + single[j];
  for (const auto& c : h.couplings)
    pair_delta[c.i][c.j] +=
        4.0 * c.value * spin_of(x.bits[c.i]) * spin_of(x.bits[c.j]);
  for (int i = 0; i < h.n; ++i) {
    for (int j = i + 1; j < h.n; ++j) {
      if (pair_delta[i][j] < best_delta) {
        best_delta = pair_delta[i][j];
        best_i = i;
        best_j = j;
      }
    }
  }

  if (best_i < 0) return Bitstring(x.bits, CostModel::Ising, base);
  Bits out = x.bits;
  out[best_i] ^= 1u;
  if (best_j >= 0) out[best_j] ^= 1u;
  return Bitstring(std::move(out), CostModel::Ising, base + best_delta);
}

}  // namespace mlqubo
