#pragma once

#include <numeric>
#include <stdexcept>
#include <vector>

namespace mlqubo {

using LayerPairs = std::vector<std::pair<int, int>>;  // disjoint label pairs

inline std::vector<int> identity_ordering(int n) {
  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  return order;
}

inline void check_permutation(const std::vector<int>& ordering, int n) {
  if (static_cast<int>(ordering.size()) != n)
    throw std::invalid_argument("ordering length mismatch");
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  for (int v : ordering) {
    if (v < 0 || v >= n || seen[v])
      throw std::invalid_argument("ordering is not a permutation");
    seen[v] = 1;
  }
}

// Odd-even transposition network over the given initial label ordering:
// n layers of adjacent transpositions under which every unordered pair of
// logical labels co-occurs in exactly one layer entry. Odd layers can be
// empty for small n; they are kept so that layer indices always run 0..n-1.
inline std::vector<LayerPairs> swap_network_layers(
    int n, const std::vector<int>& ordering) {
  if (n < 2) throw std::invalid_argument("swap network needs n >= 2");
  check_permutation(ordering, n);
  std::vector<int> occupant = ordering;  // occupant[pos] = logical label
  std::vector<LayerPairs> layers(static_cast<std::size_t>(n));
  for (int t = 0; t < n; ++t) {
    for (int pos = t % 2; pos + 1 < n; pos += 2) {
      layers[t].emplace_back(occupant[pos], occupant[pos + 1]);
      std::swap(occupant[pos], occupant[pos + 1]);
    }
  }
  return layers;
}

}  // namespace mlqubo
