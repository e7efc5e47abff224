#pragma once

#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "mlqubo/problem.hpp"
#include "mlqubo/statevector.hpp"

// Relax-and-round family: eigendecompose a symmetric matrix derived from the
// two-point correlators (or the adjacency itself), sign-round every
// eigenvector into a candidate bitstring, and keep the best candidate under
// the target cost.

namespace mlqubo {

namespace detail {

// Zero eigenvector entries round to spin +1 (bit 0) for determinism.
inline Bits sign_round(const Eigen::VectorXd& v) {
  Bits bits(static_cast<std::size_t>(v.size()));
  for (Eigen::Index i = 0; i < v.size(); ++i) bits[i] = v[i] >= 0.0 ? 0 : 1;
  return bits;
}

}  // namespace detail

// One sign-rounded candidate per eigenvector, ordered by ascending eigenvalue
// (the solver's order); exactly n candidates.
inline std::vector<Bits> spectral_candidates(const Eigen::MatrixXd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("eigendecomposition failed");
  std::vector<Bits> candidates;
  candidates.reserve(static_cast<std::size_t>(m.rows()));
  for (Eigen::Index k = 0; k < m.cols(); ++k)
    candidates.push_back(detail::sign_round(solver.eigenvectors().col(k)));
  return candidates;
}

namespace detail {

inline void check_correlation(const CorrelationMatrix& corr) {
  const std::size_t n = corr.size();
  for (const auto& row : corr)
    if (row.size() != n)
      throw std::invalid_argument("correlation matrix is not square");
  for (std::size_t i = 0; i < n; ++i) {
    if (std::abs(corr[i][i] - 1.0) > 1e-9)
      throw std::invalid_argument("correlation diagonal must be 1");
    for (std::size_t j = i + 1; j < n; ++j)
      if (std::abs(corr[i][j] - corr[j][i]) > 1e-9)
        throw std::invalid_argument("correlation matrix must be symmetric");
  }
}

inline Bitstring best_candidate(const std::vector<Bits>& candidates,
                                const IsingHamiltonian& h) {
  Bitstring best;
  double best_energy = std::numeric_limits<double>::infinity();
  for (const auto& bits : candidates) {
    const double e = eval_ising(h, bits);
    if (e < best_energy) {  // ties keep the lowest eigenvector index
      best_energy = e;
      best = Bitstring(bits, CostModel::Ising, e);
    }
  }
  return best;
}

}  // namespace detail

// QRR: Z_ij = (delta_ij - 1) <sigma_z^i sigma_z^j>, i.e. zero diagonal and
// negated off-diagonal correlators.
inline Bitstring qrr_round(const CorrelationMatrix& corr,
                           const IsingHamiltonian& h) {
  detail::check_correlation(corr);
  if (static_cast<int>(corr.size()) != h.n)
    throw std::invalid_argument("correlation size mismatch");
  Eigen::MatrixXd z = Eigen::MatrixXd::Zero(h.n, h.n);
  for (int i = 0; i < h.n; ++i)
    for (int j = 0; j < h.n; ++j)
      if (i != j) z(i, j) = -corr[i][j];
  return detail::best_candidate(spectral_candidates(z), h);
}

// w-QRR: correlators weighted by the couplings, M_ij = J_ij <s_i s_j>,
// zero diagonal; otherwise identical to QRR.
inline Bitstring wqrr_round(const CorrelationMatrix& corr,
                            const IsingHamiltonian& h) {
  detail::check_correlation(corr);
  if (static_cast<int>(corr.size()) != h.n)
    throw std::invalid_argument("correlation size mismatch");
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(h.n, h.n);
  for (const auto& c : h.couplings) {
    m(c.i, c.j) = c.value * corr[c.i][c.j];
    m(c.j, c.i) = m(c.i, c.j);
  }
  return detail::best_candidate(spectral_candidates(m), h);
}

// Classical relax-and-round on the adjacency matrix W; best cut wins.
inline Bitstring classical_relax_round(const MaxCutGraph& g) {
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(g.n, g.n);
  for (const auto& e : g.edges) {
    w(e.u, e.v) = e.w;
    w(e.v, e.u) = e.w;
  }
  Bitstring best;
  double best_cut = -std::numeric_limits<double>::infinity();
  for (const auto& bits : spectral_candidates(w)) {
    const double cut = eval_cut(g, bits);
    if (cut > best_cut) {
      best_cut = cut;
      best = Bitstring(bits, CostModel::Cut, cut);
    }
  }
  return best;
}

}  // namespace mlqubo
