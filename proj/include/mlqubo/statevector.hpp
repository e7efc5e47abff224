#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <map>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "mlqubo/problem.hpp"
#include "mlqubo/random.hpp"
#include "mlqubo/timeblock.hpp"

// Statevector simulation of Time-Block QAOA. Phase separators are applied as
// diagonal unitaries computed from the block's terms; the physical SWAPs of
// the network only determine which couplings share a block, so routing is
// never simulated. Capped at 20 qubits.

namespace mlqubo {

inline constexpr int kStatevectorCap = 20;

struct QaoaParams {
  std::vector<double> gamma;  // phase angles, one per algorithmic layer
  std::vector<double> beta;   // mixer angles
  std::vector<int> ordering;  // gate-ordering permutation of qubit labels
};

struct StateVector {
  int n = 0;
  std::vector<std::complex<double>> amp;

  double norm() const {
    double s = 0.0;
    for (const auto& a : amp) s += std::norm(a);
    return std::sqrt(s);
  }
};

struct NoiseConfig {
  double p_damp = 0.0;  // per-qubit probability of a 1 relaxing to 0

  void validate() const {
    if (p_damp < 0.0 || p_damp > 1.0)
      throw std::invalid_argument("p_damp must lie in [0, 1]");
  }
};

struct SampleSet {
  std::map<std::string, int> counts;  // bitstring -> occurrences
  int shots = 0;
};

namespace detail {

inline int bit_of(std::uint64_t basis, int qubit) {
  return static_cast<int>((basis >> qubit) & 1ull);
}

// Diagonal of the block Hamiltonian over all basis states (constant excluded;
// it only contributes a global phase).
inline void accumulate_block_diagonal(const TimeBlock& block, int n,
                                      std::vector<double>& diag) {
  const std::uint64_t dim = 1ull << n;
  for (const auto& c : block.couplings) {
    for (std::uint64_t x = 0; x < dim; ++x) {
      const int parity = bit_of(x, c.i) ^ bit_of(x, c.j);
      diag[x] += parity ? -c.value : c.value;
    }
  }
  for (const auto& [i, f] : block.fields) {
    for (std::uint64_t x = 0; x < dim; ++x)
      diag[x] += bit_of(x, i) ? -f : f;
  }
}

inline void apply_phase(StateVector& s, const std::vector<double>& diag,
                        double gamma) {
  for (std::size_t x = 0; x < s.amp.size(); ++x)
    s.amp[x] *= std::polar(1.0, -gamma * diag[x]);
}

// exp(-i beta X) on every qubit, as independent single-qubit rotations.
inline void apply_mixer(StateVector& s, double beta) {
  const double c = std::cos(beta);
  const std::complex<double> ms(0.0, -std::sin(beta));
  for (int q = 0; q < s.n; ++q) {
    const std::uint64_t bit = 1ull << q;
    for (std::uint64_t x = 0; x < s.amp.size(); ++x) {
      if (x & bit) continue;
      const auto a0 = s.amp[x];
      const auto a1 = s.amp[x | bit];
      s.amp[x] = c * a0 + ms * a1;
      s.amp[x | bit] = ms * a0 + c * a1;
    }
  }
}

}  // namespace detail

// |+>^n, then p alternating layers: the diagonal phase of block (i mod m)
// with angle gamma_i followed by the transverse-field mixer with beta_i.
// Blocks are cycled in order when p exceeds the partition size.
inline StateVector simulate_tbqaoa(const IsingHamiltonian& h,
                                   const TimeBlockPartition& part,
                                   const QaoaParams& params) {
  if (h.n > kStatevectorCap)
    throw std::invalid_argument("statevector simulation capped at 20 qubits");
  if (params.gamma.size() != params.beta.size())
    throw std::invalid_argument("gamma/beta length mismatch");
  if (part.blocks.empty()) throw std::invalid_argument("empty partition");

  const std::uint64_t dim = 1ull << h.n;
  StateVector s;
  s.n = h.n;
  s.amp.assign(dim, std::complex<double>(
                        1.0 / std::sqrt(static_cast<double>(dim)), 0.0));

  std::vector<double> diag(dim);
  for (std::size_t layer = 0; layer < params.gamma.size(); ++layer) {
    const TimeBlock& block = part.blocks[layer % part.blocks.size()];
    std::fill(diag.begin(), diag.end(), 0.0);
    detail::accumulate_block_diagonal(block, h.n, diag);
    detail::apply_phase(s, diag, params.gamma[layer]);
    detail::apply_mixer(s, params.beta[layer]);
  }
  return s;
}

// <psi|H|psi> = sum_x |amp_x|^2 E(x), including the Hamiltonian's constant.
inline double exact_expectation(const StateVector& s,
                                const IsingHamiltonian& h) {
  if (s.n != h.n) throw std::invalid_argument("dimension mismatch");
  std::vector<double> diag(s.amp.size(), 0.0);
  TimeBlock all;
  all.couplings = h.couplings;
  for (int i = 0; i < h.n; ++i)
    if (h.fields[i] != 0.0) all.fields.emplace_back(i, h.fields[i]);
  detail::accumulate_block_diagonal(all, h.n, diag);
  double total = 0.0;
  for (std::size_t x = 0; x < s.amp.size(); ++x)
    total += std::norm(s.amp[x]) * diag[x];
  return total + h.constant;
}

// Draw `shots` bitstrings from |amp|^2, then push them through the attractor
// channel: every 1 independently resets to 0 with probability p_damp.
inline SampleSet sample(const StateVector& s, int shots,
                        const NoiseConfig& noise, std::uint64_t seed) {
  if (shots < 1) throw std::invalid_argument("need at least one shot");
  noise.validate();
  auto rng = make_rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  std::vector<double> cdf(s.amp.size());
  double acc = 0.0;
  for (std::size_t x = 0; x < s.amp.size(); ++x) {
    acc += std::norm(s.amp[x]);
    cdf[x] = acc;
  }

  SampleSet out;
  out.shots = shots;
  std::string key(static_cast<std::size_t>(s.n), '0');
  for (int shot = 0; shot < shots; ++shot) {
    const double u = unit(rng) * acc;
    const std::uint64_t x = static_cast<std::uint64_t>(
        std::lower_bound(cdf.begin(), cdf.end(), u) - cdf.begin());
    for (int q = 0; q < s.n; ++q) {
      char bit = detail::bit_of(x, q) ? '1' : '0';
      if (bit == '1' && noise.p_damp > 0.0 && unit(rng) < noise.p_damp)
        bit = '0';
      key[q] = bit;
    }
    ++out.counts[key];
  }
  return out;
}

using CorrelationMatrix = std::vector<std::vector<double>>;

// Empirical two-point correlators <sigma_z^i sigma_z^j>; unit diagonal.
inline CorrelationMatrix correlation_matrix(const SampleSet& samples) {
  if (samples.shots < 1) throw std::invalid_argument("empty sample set");
  const int n = static_cast<int>(samples.counts.begin()->first.size());
  CorrelationMatrix corr(n, std::vector<double>(n, 0.0));
  for (const auto& [key, count] : samples.counts) {
    for (int i = 0; i < n; ++i) {
      const int si = key[i] == '0' ? 1 : -1;
      for (int j = i + 1; j < n; ++j) {
        const int sj = key[j] == '0' ? 1 : -1;
        corr[i][j] += static_cast<double>(count) * si * sj;
      }
    }
  }
  for (int i = 0; i < n; ++i) {
    corr[i][i] = 1.0;
    for (int j = i + 1; j < n; ++j) {
      corr[i][j] /= samples.shots;
      corr[j][i] = corr[i][j];
    }
  }
  return corr;
}

// Exact correlators from the statevector, sum_x p(x) s_i s_j.
inline CorrelationMatrix exact_correlations(const StateVector& s) {
  CorrelationMatrix corr(s.n, std::vector<double>(s.n, 0.0));
  for (int i = 0; i < s.n; ++i) corr[i][i] = 1.0;
  for (std::uint64_t x = 0; x < s.amp.size(); ++x) {
    const double p = std::norm(s.amp[x]);
    if (p == 0.0) continue;
    for (int i = 0; i < s.n; ++i) {
      const int si = detail::bit_of(x, i) ? -1 : 1;
      for (int j = i + 1; j < s.n; ++j) {
        const int sj = detail::bit_of(x, j) ? -1 : 1;
        corr[i][j] += p * si * sj;
      }
    }
  }
  for (int i = 0; i < s.n; ++i)
    for (int j = i + 1; j < s.n; ++j) corr[j][i] = corr[i][j];
  return corr;
}

// Best (lowest-energy) bitstring in a sample set under the given Hamiltonian.
inline Bitstring best_sample(const SampleSet& samples,
                             const IsingHamiltonian& h) {
  Bitstring best;
  double best_energy = std::numeric_limits<double>::infinity();
  for (const auto& [key, count] : samples.counts) {
    const Bits bits = string_to_bits(key);
    const double e = eval_ising(h, bits);
    if (e < best_energy) {
      best_energy = e;
      best = Bitstring(bits, CostModel::Ising, e);
    }
  }
  return best;
}

// "bitstring count" lines
inline void write_samples(std::ostream& out, const SampleSet& samples) {
  for (const auto& [key, count] : samples.counts)
    out << key << ' ' << count << '\n';
}

}  // namespace mlqubo
