#pragma once

#include <map>
#include <stdexcept>
#include <vector>

#include "mlqubo/problem.hpp"
#include "mlqubo/swap_network.hpp"

namespace mlqubo {

// One phase-separator block: a subset of the Hamiltonian's couplings plus any
// local fields assigned to it. The blocks of a partition jointly cover every
// term exactly once.
struct TimeBlock {
  std::vector<Coupling> couplings;
  std::vector<std::pair<int, double>> fields;
};

struct TimeBlockPartition {
  int k = 0;  // physical depth per block (swap-network layers)
  std::vector<TimeBlock> blocks;
};

// Groups the n swap-network layers into ceil(n/k) consecutive batches of k;
// a coupling lands in the block whose layers bring its qubit pair adjacent.
// All local fields go to the first block. Blocks without terms are retained
// empty so that block indices track the layer batches.
inline TimeBlockPartition build_timeblock_partition(
    const IsingHamiltonian& h, int k, const std::vector<int>& ordering) {
  if (k < 1 || k > h.n)
    throw std::invalid_argument("time-block depth must satisfy 1 <= k <= n");
  TimeBlockPartition part;
  part.k = k;

  if (h.n == 1) {
    part.blocks.resize(1);
    if (h.fields[0] != 0.0) part.blocks[0].fields.emplace_back(0, h.fields[0]);
    return part;
  }

  const auto layers = swap_network_layers(h.n, ordering);
  const int n_blocks = (h.n + k - 1) / k;
  part.blocks.resize(static_cast<std::size_t>(n_blocks));

  std::map<std::pair<int, int>, int> pair_block;
  for (int t = 0; t < static_cast<int>(layers.size()); ++t)
    for (const auto& [a, b] : layers[t])
      pair_block[{std::min(a, b), std::max(a, b)}] = t / k;

  for (const auto& c : h.couplings) {
    const auto it = pair_block.find({c.i, c.j});
    if (it == pair_block.end())
      throw std::logic_error("swap network missed a coupling pair");
    part.blocks[it->second].couplings.push_back(c);
  }
  for (int i = 0; i < h.n; ++i)
    if (h.fields[i] != 0.0) part.blocks[0].fields.emplace_back(i, h.fields[i]);
  return part;
}

}  // namespace mlqubo
