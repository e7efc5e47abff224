#pragma once

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "mlqubo/problem.hpp"

namespace mlqubo {

enum class OptSense : std::uint8_t { Maximize, Minimize };

// Renormalized approximation ratio: 1 at the optimum, 0 at the worst value.
// A degenerate spectrum (c_max == c_min) makes every assignment optimal and
// worst at once; we define the ratio as 1 in that case.
inline double approximation_ratio(double c, double c_min, double c_max,
                                  OptSense sense) {
  if (c_max < c_min) throw std::invalid_argument("c_max < c_min");
  const double span = c_max - c_min;
  if (span == 0.0) return 1.0;
  return sense == OptSense::Maximize ? (c - c_min) / span : (c_max - c) / span;
}

inline std::vector<int> cut_edge_set(const MaxCutGraph& g, const Bits& x) {
  if (static_cast<int>(x.size()) != g.n)
    throw std::invalid_argument("assignment length mismatch");
  std::vector<int> cut;
  for (int e = 0; e < static_cast<int>(g.edges.size()); ++e)
    if (x[g.edges[e].u] != x[g.edges[e].v]) cut.push_back(e);
  return cut;
}

// Intersection-over-union of the two cut-edge sets; 1 when both are empty.
inline double jaccard_cut_similarity(const MaxCutGraph& g, const Bits& x1,
                                     const Bits& x2) {
  const auto c1 = cut_edge_set(g, x1);
  const auto c2 = cut_edge_set(g, x2);
  if (c1.empty() && c2.empty()) return 1.0;
  std::vector<int> inter;
  std::set_intersection(c1.begin(), c1.end(), c2.begin(), c2.end(),
                        std::back_inserter(inter));
  const std::size_t uni = c1.size() + c2.size() - inter.size();
  return static_cast<double>(inter.size()) / static_cast<double>(uni);
}

}  // namespace mlqubo
