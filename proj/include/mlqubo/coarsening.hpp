#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "mlqubo/embedding.hpp"
#include "mlqubo/kdtree.hpp"
#include "mlqubo/problem.hpp"
#include "mlqubo/random.hpp"

namespace mlqubo {

// Disjoint node pairs plus leftover singletons; together they partition the
// node set of one level.
struct Matching {
  std::vector<std::pair<int, int>> pairs;
  std::vector<int> singletons;
};

// Greedy nearest-neighbor matching over the sphere embedding: visit nodes in
// seeded random order and pair each unmatched node with its nearest unmatched
// neighbor from a K-D tree query.
inline Matching match_pairs(const SphereEmbedding& emb, const MaxCutGraph& g,
                            std::uint64_t seed) {
  if (emb.points.size() != static_cast<std::size_t>(g.n))
    throw std::invalid_argument("embedding does not cover all nodes");
  Matching m;
  if (g.n == 1) {
    m.singletons.push_back(0);
    return m;
  }
  KdTree tree(emb.points);
  std::vector<char> unmatched(static_cast<std::size_t>(g.n), 1);
  std::vector<int> order(static_cast<std::size_t>(g.n));
  std::iota(order.begin(), order.end(), 0);
  auto rng = make_rng(seed);
  std::shuffle(order.begin(), order.end(), rng);
  for (int i : order) {
    if (!unmatched[i]) continue;
    const int j = tree.nearest(emb.points[i], i, unmatched);
    if (j < 0) {
      m.singletons.push_back(i);
      unmatched[i] = 0;
      continue;
    }
    m.pairs.emplace_back(std::min(i, j), std::max(i, j));
    unmatched[i] = 0;
    unmatched[j] = 0;
  }
  return m;
}

// Contract a matching: one coarse node per pair/singleton, coarse edge weight
// w'(A,B) = sum of fine w(i,j) over i in A, j in B. Intra-pair edges vanish
// (both endpoints inherit the same bit) and exact-zero accumulations are
// dropped. Coarse ids follow first appearance in fine-node order.
inline std::pair<MaxCutGraph, std::vector<int>> coarsen(const MaxCutGraph& g,
                                                        const Matching& m) {
  std::vector<int> partner(static_cast<std::size_t>(g.n), -1);
  for (const auto& [a, b] : m.pairs) {
    if (a < 0 || b >= g.n || partner[a] != -1 || partner[b] != -1)
      throw std::invalid_argument("matching is not a valid partition");
    partner[a] = b;
    partner[b] = a;
  }
  for (int s : m.singletons) {
    if (s < 0 || s >= g.n || partner[s] != -1)
      throw std::invalid_argument("matching is not a valid partition");
    partner[s] = s;
  }
  for (int i = 0; i < g.n; ++i)
    if (partner[i] == -1)
      throw std::invalid_argument("matching misses a node");

  std::vector<int> map(static_cast<std::size_t>(g.n), -1);
  int next = 0;
  for (int i = 0; i < g.n; ++i) {
    if (map[i] != -1) continue;
    map[i] = next;
    map[partner[i]] = next;
    ++next;
  }

  std::map<std::pair<int, int>, double> acc;
  for (const auto& e : g.edges) {
    int cu = map[e.u], cv = map[e.v];
    if (cu == cv) continue;
    if (cu > cv) std::swap(cu, cv);
    acc[{cu, cv}] += e.w;
  }
  std::vector<Edge> edges;
  edges.reserve(acc.size());
  for (const auto& [key, w] : acc)
    if (w != 0.0) edges.push_back({key.first, key.second, w});
  return {MaxCutGraph(next, std::move(edges)), std::move(map)};
}

// Graphs G_0 (finest) through G_L (coarsest) plus the per-level fine->coarse
// surjections.
struct CoarseningHierarchy {
  std::vector<MaxCutGraph> levels;
  std::vector<std::vector<int>> maps;  // maps[l]: nodes of G_l -> nodes of G_{l+1}
};

// Repeats embed -> match -> contract until the coarsest level fits in
// `coarsest_size` nodes or a level stops shrinking.
inline CoarseningHierarchy build_hierarchy(const MaxCutGraph& g0,
                                           int coarsest_size, int d, int iters,
                                           std::uint64_t seed) {
  if (coarsest_size < 2)
    throw std::invalid_argument("coarsest size must be >= 2");
  CoarseningHierarchy hier;
  hier.levels.push_back(g0);
  while (hier.levels.back().n > coarsest_size) {
    const MaxCutGraph& level = hier.levels.back();
    const std::uint64_t level_seed =
        mix_seed(seed, hier.levels.size());
    const SphereEmbedding emb =
        embed_sphere(level, d, iters, mix_seed(level_seed, 1));
    const Matching m = match_pairs(emb, level, mix_seed(level_seed, 2));
    auto [coarse, map] = coarsen(level, m);
    if (coarse.n >= level.n) break;
    hier.maps.push_back(std::move(map));
    hier.levels.push_back(std::move(coarse));
  }
  return hier;
}

// Every fine node receives its coarse parent's bit.
inline Bits interpolate(const Bits& coarse, const std::vector<int>& map) {
  Bits fine(map.size());
  for (std::size_t i = 0; i < map.size(); ++i) {
    if (map[i] < 0 || map[i] >= static_cast<int>(coarse.size()))
      throw std::invalid_argument("coarse solution length mismatch");
    fine[i] = coarse[map[i]];
  }
  return fine;
}

}  // namespace mlqubo
