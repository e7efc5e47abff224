#pragma once

#include <fstream>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "mlqubo/problem.hpp"

// Text formats:
//   Max-Cut edge list (MQLib convention):  "n m" then m lines "i j w", 1-based.
//   QUBO:                                  "n"   then lines "i j q", 0-based, j >= i.

namespace mlqubo {

inline MaxCutGraph read_maxcut(std::istream& in) {
  int n = 0;
  long long m = 0;
  if (!(in >> n >> m)) throw std::runtime_error("bad edge-list header");
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(m));
  for (long long e = 0; e < m; ++e) {
    int i, j;
    double w;
    if (!(in >> i >> j >> w)) throw std::runtime_error("truncated edge list");
    if (i < 1 || j < 1 || i > n || j > n)
      throw std::runtime_error("edge index out of range");
    if (i == j) throw std::runtime_error("self-loop not allowed");
    int u = i - 1, v = j - 1;
    if (u > v) std::swap(u, v);
    if (w != 0.0) edges.push_back({u, v, w});
  }
  return MaxCutGraph(n, std::move(edges));
}

inline QuboProblem read_qubo(std::istream& in) {
  int n = 0;
  if (!(in >> n)) throw std::runtime_error("bad QUBO header");
  std::vector<QuboTerm> terms;
  int i, j;
  double q;
  while (in >> i >> j >> q) {
    if (i < 0 || j < i || j >= n) throw std::runtime_error("bad QUBO entry");
    if (q != 0.0) terms.push_back({i, j, q});
  }
  return QuboProblem(n, std::move(terms));
}

inline void write_maxcut(std::ostream& out, const MaxCutGraph& g) {
  out << g.n << ' ' << g.edges.size() << '\n';
  out << std::setprecision(17);
  for (const auto& e : g.edges)
    out << e.u + 1 << ' ' << e.v + 1 << ' ' << e.w << '\n';
}

inline void write_qubo(std::ostream& out, const QuboProblem& q) {
  out << q.n << '\n';
  out << std::setprecision(17);
  for (const auto& t : q.terms)
    out << t.i << ' ' << t.j << ' ' << t.q << '\n';
}

inline MaxCutGraph read_maxcut_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return read_maxcut(in);
}

inline QuboProblem read_qubo_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return read_qubo(in);
}

inline void write_maxcut_file(const std::string& path, const MaxCutGraph& g) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path);
  write_maxcut(out, g);
}

inline void write_qubo_file(const std::string& path, const QuboProblem& q) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path);
  write_qubo(out, q);
}

}  // namespace mlqubo
