#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "mlqubo/problem.hpp"
#include "mlqubo/random.hpp"

namespace mlqubo {

// Per-node unit vectors on the surface of a d-sphere (embedded in R^{d+1}).
struct SphereEmbedding {
  int d = 0;
  std::vector<std::vector<double>> points;
};

namespace detail {

inline double norm(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

inline void normalize(std::vector<double>& v) {
  const double n = norm(v);
  for (double& x : v) x /= n;
}

}  // namespace detail

// Random placement on the sphere followed by `iters` Gauss-Seidel sweeps in
// node-index order. Each node moves to the unit vector along -sum_j w_ij p_j,
// which maximizes its total weighted squared distance to its neighbors:
// positive edges drive endpoints antipodal, negative edges pull them together.
// A node whose neighbor sum vanishes keeps its position.
inline SphereEmbedding embed_sphere(const MaxCutGraph& g, int d, int iters,
                                    std::uint64_t seed) {
  if (d < 1) throw std::invalid_argument("embedding dimension must be >= 1");
  if (iters < 0) throw std::invalid_argument("iteration count must be >= 0");
  const std::size_t dim = static_cast<std::size_t>(d) + 1;
  auto rng = make_rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);

  SphereEmbedding emb;
  emb.d = d;
  emb.points.assign(static_cast<std::size_t>(g.n),
                    std::vector<double>(dim, 0.0));
  for (auto& p : emb.points) {
    double n = 0.0;
    do {
      for (double& x : p) x = gauss(rng);
      n = detail::norm(p);
    } while (n < 1e-12);
    for (double& x : p) x /= n;
  }

  const Adjacency adj = build_adjacency(g);
  std::vector<double> dir(dim);
  for (int sweep = 0; sweep < iters; ++sweep) {
    for (int i = 0; i < g.n; ++i) {
      std::fill(dir.begin(), dir.end(), 0.0);
      for (const auto& [j, w] : adj[i])
        for (std::size_t k = 0; k < dim; ++k) dir[k] -= w * emb.points[j][k];
      const double n = detail::norm(dir);
      if (n < 1e-12) continue;
      for (std::size_t k = 0; k < dim; ++k) emb.points[i][k] = dir[k] / n;
    }
  }
  return emb;
}

}  // namespace mlqubo
