#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

// Problem representations and the conversions between them.
//
// Three equivalent formulations are used throughout:
//   QUBO:    maximize x^T Q x over x in {0,1}^n, Q upper-triangular (j >= i).
//   Max-Cut: maximize sum over edges w_ij * [x_i != x_j].
//   Ising:   minimize sum_i h_i s_i + sum_{i<j} J_ij s_i s_j + constant,
//            with spins s_i = 1 - 2 x_i.
//
// Conversions are affine on the cost: cost_src = scale * cost_dst + offset,
// recorded in a ConversionRecord so solutions and costs can be pulled back.

namespace mlqubo {

using Bits = std::vector<std::uint8_t>;

enum class CostModel : std::uint8_t { Qubo, Cut, Ising };

struct EvaluatedCost {
  CostModel model;
  double value;
};

// Binary assignment with an optionally cached cost. The cache records which
// representation the cost was evaluated on.
struct Bitstring {
  Bits bits;
  std::optional<EvaluatedCost> cost;

  Bitstring() = default;
  explicit Bitstring(Bits b) : bits(std::move(b)) {}
  Bitstring(Bits b, CostModel m, double v)
      : bits(std::move(b)), cost(EvaluatedCost{m, v}) {}

  std::size_t size() const { return bits.size(); }
};

inline std::string bits_to_string(const Bits& b) {
  std::string s(b.size(), '0');
  for (std::size_t i = 0; i < b.size(); ++i)
    if (b[i]) s[i] = '1';
  return s;
}

inline Bits string_to_bits(const std::string& s) {
  Bits b(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] != '0' && s[i] != '1')
      throw std::invalid_argument("bitstring contains non-binary character");
    b[i] = static_cast<std::uint8_t>(s[i] - '0');
  }
  return b;
}

inline Bits complement(const Bits& b) {
  Bits out(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) out[i] = b[i] ^ 1u;
  return out;
}

// spin s = 1 - 2x, i.e. bit 0 -> +1, bit 1 -> -1
inline int spin_of(std::uint8_t bit) { return 1 - 2 * static_cast<int>(bit); }

struct QuboTerm {
  int i, j;  // j >= i; i == j encodes a diagonal entry
  double q;
};

struct QuboProblem {
  int n = 0;
  std::vector<QuboTerm> terms;

  QuboProblem() = default;
  QuboProblem(int n_, std::vector<QuboTerm> t) : n(n_), terms(std::move(t)) {
    if (n < 1) throw std::invalid_argument("QUBO needs n >= 1");
    for (const auto& term : terms) {
      if (term.i < 0 || term.j < term.i || term.j >= n)
        throw std::invalid_argument("QUBO term indices must satisfy 0 <= i <= j < n");
      if (!std::isfinite(term.q))
        throw std::invalid_argument("QUBO term is not finite");
    }
    std::vector<std::pair<int, int>> keys;
    keys.reserve(terms.size());
    for (const auto& term : terms) keys.emplace_back(term.i, term.j);
    std::sort(keys.begin(), keys.end());
    if (std::adjacent_find(keys.begin(), keys.end()) != keys.end())
      throw std::invalid_argument("duplicate QUBO entry");
  }
};

struct Edge {
  int u, v;  // u < v
  double w;  // nonzero
};

struct MaxCutGraph {
  int n = 0;
  std::vector<Edge> edges;

  MaxCutGraph() = default;
  MaxCutGraph(int n_, std::vector<Edge> e) : n(n_), edges(std::move(e)) {
    if (n < 1) throw std::invalid_argument("graph needs n >= 1");
    for (const auto& edge : edges) {
      if (edge.u < 0 || edge.u >= edge.v || edge.v >= n)
        throw std::invalid_argument("edge must satisfy 0 <= u < v < n");
      if (edge.w == 0.0 || !std::isfinite(edge.w))
        throw std::invalid_argument("edge weight must be finite and nonzero");
    }
    std::vector<std::pair<int, int>> keys;
    keys.reserve(edges.size());
    for (const auto& edge : edges) keys.emplace_back(edge.u, edge.v);
    std::sort(keys.begin(), keys.end());
    if (std::adjacent_find(keys.begin(), keys.end()) != keys.end())
      throw std::invalid_argument("duplicate edge");
  }
};

using Adjacency = std::vector<std::vector<std::pair<int, double>>>;

inline Adjacency build_adjacency(const MaxCutGraph& g) {
  Adjacency adj(g.n);
  for (const auto& e : g.edges) {
    adj[e.u].emplace_back(e.v, e.w);
    adj[e.v].emplace_back(e.u, e.w);
  }
  return adj;
}

struct Coupling {
  int i, j;  // strict: i < j
  double value;
};

struct IsingHamiltonian {
  int n = 0;
  std::vector<double> fields;      // h_i
  std::vector<Coupling> couplings;  // strict upper triangle
  double constant = 0.0;           // additive offset, never affects argmin

  IsingHamiltonian() = default;
  explicit IsingHamiltonian(int n_)
      : n(n_), fields(static_cast<std::size_t>(n_), 0.0) {
    if (n < 1) throw std::invalid_argument("Ising needs n >= 1");
  }
  IsingHamiltonian(int n_, std::vector<double> h, std::vector<Coupling> j,
                   double c = 0.0)
      : n(n_), fields(std::move(h)), couplings(std::move(j)), constant(c) {
    if (n < 1) throw std::invalid_argument("Ising needs n >= 1");
    if (static_cast<int>(fields.size()) != n)
      throw std::invalid_argument("field vector length mismatch");
    for (double v : fields)
      if (!std::isfinite(v)) throw std::invalid_argument("field is not finite");
    for (const auto& c2 : couplings) {
      if (c2.i < 0 || c2.i >= c2.j || c2.j >= n)
        throw std::invalid_argument("coupling must satisfy 0 <= i < j < n");
      if (!std::isfinite(c2.value))
        throw std::invalid_argument("coupling is not finite");
    }
  }
};

// Symmetric coupling adjacency including fields access via pairs (j, J_ij).
inline Adjacency build_coupling_adjacency(const IsingHamiltonian& h) {
  Adjacency adj(h.n);
  for (const auto& c : h.couplings) {
    adj[c.i].emplace_back(c.j, c.value);
    adj[c.j].emplace_back(c.i, c.value);
  }
  return adj;
}

// Bitflip (spin-reversal) transform. Composition is entrywise XOR.
struct GaugeVector {
  Bits g;

  GaugeVector() = default;
  explicit GaugeVector(Bits bits) : g(std::move(bits)) {}
  static GaugeVector identity(int n) {
    return GaugeVector(Bits(static_cast<std::size_t>(n), 0));
  }

  GaugeVector composed_with(const GaugeVector& other) const {
    if (g.size() != other.g.size())
      throw std::invalid_argument("gauge length mismatch");
    Bits out(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) out[i] = g[i] ^ other.g[i];
    return GaugeVector(std::move(out));
  }
};

inline Bits apply_gauge_to_bits(const Bits& x, const GaugeVector& g) {
  if (x.size() != g.g.size())
    throw std::invalid_argument("gauge/bitstring length mismatch");
  Bits out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i] ^ g.g[i];
  return out;
}

enum class ConversionKind : std::uint8_t { QuboToMaxcut, MaxcutToIsing };

// cost_src = scale * cost_dst + offset
struct ConversionRecord {
  ConversionKind kind;
  double scale = 1.0;
  double offset = 0.0;
  int auxiliary_node = -1;  // index of the node added by qubo->maxcut, else -1
};

// ---------------------------------------------------------------------------
// Cost evaluation

inline double eval_qubo(const QuboProblem& q, const Bits& x) {
  if (static_cast<int>(x.size()) != q.n)
    throw std::invalid_argument("assignment length mismatch");
  double total = 0.0;
  for (const auto& t : q.terms)
    if (x[t.i] && x[t.j]) total += t.q;
  return total;
}

inline double eval_cut(const MaxCutGraph& g, const Bits& x) {
  if (static_cast<int>(x.size()) != g.n)
    throw std::invalid_argument("assignment length mismatch");
  double total = 0.0;
  for (const auto& e : g.edges)
    if (x[e.u] != x[e.v]) total += e.w;
  return total;
}

inline double eval_ising(const IsingHamiltonian& h, const Bits& x) {
  if (static_cast<int>(x.size()) != h.n)
    throw std::invalid_argument("assignment length mismatch");
  double total = h.constant;
  for (int i = 0; i < h.n; ++i) total += h.fields[i] * spin_of(x[i]);
  for (const auto& c : h.couplings)
    total += c.value * spin_of(x[c.i]) * spin_of(x[c.j]);
  return total;
}

inline double eval_cut(const MaxCutGraph& g, const Bitstring& x) {
  return eval_cut(g, x.bits);
}
inline double eval_ising(const IsingHamiltonian& h, const Bitstring& x) {
  return eval_ising(h, x.bits);
}

// ---------------------------------------------------------------------------
// Conversions

// n-variable QUBO -> (n+1)-node Max-Cut over nodes {0..n}, node n auxiliary.
// Off-diagonal couplings map to W_ij = -Q_ij; the auxiliary edges absorb the
// diagonal and the row/column sums, W_in = 2 Q_ii + sum_{j != i} Q_(ij).
// With this choice cut(W, (x, 0)) = 2 * qubo(Q, x) for every x.
inline std::pair<MaxCutGraph, ConversionRecord> qubo_to_maxcut(
    const QuboProblem& q) {
  const int n = q.n;
  std::vector<double> aux(static_cast<std::size_t>(n), 0.0);
  std::vector<Edge> edges;
  // accumulate aux weights and collect off-diagonal edges
  std::vector<std::pair<std::pair<int, int>, double>> cross;
  for (const auto& t : q.terms) {
    if (t.i == t.j) {
      aux[t.i] += 2.0 * t.q;
    } else {
      cross.push_back({{t.i, t.j}, -t.q});
      aux[t.i] += t.q;
      aux[t.j] += t.q;
    }
  }
  for (const auto& [ij, w] : cross)
    if (w != 0.0) edges.push_back({ij.first, ij.second, w});
  for (int i = 0; i < n; ++i)
    if (aux[i] != 0.0) edges.push_back({i, n, aux[i]});
  ConversionRecord rec{ConversionKind::QuboToMaxcut, 2.0, 0.0, n};
  return {MaxCutGraph(n + 1, std::move(edges)), rec};
}

// x_i = y_i XOR y_n (cuts are invariant under global complement, so the two
// lifts of each x collapse back onto it).
inline Bitstring recover_qubo_solution(const Bitstring& y,
                                       const ConversionRecord& rec) {
  if (rec.kind != ConversionKind::QuboToMaxcut)
    throw std::invalid_argument("record is not a qubo->maxcut conversion");
  const std::size_t aux = static_cast<std::size_t>(rec.auxiliary_node);
  if (y.bits.size() != aux + 1)
    throw std::invalid_argument("solution length mismatch");
  Bits x(aux);
  for (std::size_t i = 0; i < aux; ++i) x[i] = y.bits[i] ^ y.bits[aux];
  Bitstring out{std::move(x)};
  if (y.cost && y.cost->model == CostModel::Cut)
    out.cost = EvaluatedCost{CostModel::Qubo,
                             (y.cost->value - rec.offset) / rec.scale};
  return out;
}

// J = W, h = 0; cut(W, x) = (sum W - ising(H, x)) / 2.
inline std::pair<IsingHamiltonian, ConversionRecord> maxcut_to_ising(
    const MaxCutGraph& g) {
  IsingHamiltonian h(g.n);
  double weight_sum = 0.0;
  h.couplings.reserve(g.edges.size());
  for (const auto& e : g.edges) {
    h.couplings.push_back({e.u, e.v, e.w});
    weight_sum += e.w;
  }
  ConversionRecord rec{ConversionKind::MaxcutToIsing, -0.5, weight_sum / 2.0,
                       -1};
  return {std::move(h), rec};
}

// H^g with h'_i = (1-2g_i) h_i and J'_ij = (1-2g_i)(1-2g_j) J_ij, so that
// eval_ising(H, x) == eval_ising(H^g, x XOR g) for every x.
inline IsingHamiltonian apply_gauge(const IsingHamiltonian& h,
                                    const GaugeVector& g) {
  if (g.g.size() != static_cast<std::size_t>(h.n))
    throw std::invalid_argument("gauge length mismatch");
  IsingHamiltonian out = h;
  for (int i = 0; i < h.n; ++i)
    out.fields[i] = spin_of(g.g[i]) * h.fields[i];
  for (std::size_t k = 0; k < h.couplings.size(); ++k) {
    const auto& c = h.couplings[k];
    out.couplings[k].value = spin_of(g.g[c.i]) * spin_of(g.g[c.j]) * c.value;
  }
  return out;
}

}  // namespace mlqubo
