#pragma once

#include <stdexcept>
#include <string>

#include "mlqubo/problem.hpp"
#include "mlqubo/random.hpp"

namespace mlqubo {

enum class InstanceKind : std::uint8_t { SkInt, SkReal, Gnp };

inline InstanceKind instance_kind_from_string(const std::string& s) {
  if (s == "sk_int") return InstanceKind::SkInt;
  if (s == "sk_real") return InstanceKind::SkReal;
  if (s == "gnp") return InstanceKind::Gnp;
  throw std::invalid_argument("unknown instance kind: " + s);
}

// sk_int:  complete graph, weights uniform over {-1, +1}
// sk_real: complete graph, weights uniform in [0, 1]
// gnp:     Erdos-Renyi with edge probability p, weights uniform in [-1, 1]
inline MaxCutGraph generate_instance(InstanceKind kind, int n,
                                     double edge_prob, std::uint64_t seed) {
  if (n < 2) throw std::invalid_argument("instance needs n >= 2");
  auto rng = make_rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_real_distribution<double> sym(-1.0, 1.0);
  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      switch (kind) {
        case InstanceKind::SkInt:
          edges.push_back({i, j, (rng() & 1u) ? 1.0 : -1.0});
          break;
        case InstanceKind::SkReal: {
          double w = unit(rng);
          if (w != 0.0) edges.push_back({i, j, w});
          break;
        }
        case InstanceKind::Gnp: {
          if (unit(rng) < edge_prob) {
            double w = sym(rng);
            if (w != 0.0) edges.push_back({i, j, w});
          }
          break;
        }
      }
    }
  }
  return MaxCutGraph(n, std::move(edges));
}

// Replaces every edge weight with a uniform draw from [-1, 1]; topology kept.
inline MaxCutGraph randomize_weights(const MaxCutGraph& g, std::uint64_t seed) {
  auto rng = make_rng(seed);
  std::uniform_real_distribution<double> sym(-1.0, 1.0);
  std::vector<Edge> edges = g.edges;
  for (auto& e : edges) {
    double w = sym(rng);
    while (w == 0.0) w = sym(rng);
    e.w = w;
  }
  return MaxCutGraph(g.n, std::move(edges));
}

}  // namespace mlqubo
