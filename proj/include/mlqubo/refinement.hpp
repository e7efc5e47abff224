#pragma once

#include <deque>
#include <stdexcept>
#include <string>
#include <vector>

#include "mlqubo/problem.hpp"
#include "mlqubo/random.hpp"
#include "mlqubo/subsolvers.hpp"

namespace mlqubo {

// Ising subproblem over the subset `s` with the complement frozen at
// `assignment`. Internal edges become couplings J_ab = w/2, boundary edges
// fold into local fields h_a = (w/2) * s_frozen, and the constant absorbs the
// frozen-frozen products minus the total weight so that
//   eval_ising(sub, x_s) == -eval_cut(g, assignment patched with x_s)
// holds for every x_s. Minimizing the subproblem therefore maximizes the cut
// over assignments that agree with `assignment` outside `s`.
inline IsingHamiltonian extract_subproblem(const MaxCutGraph& g,
                                           const Bits& assignment,
                                           const std::vector<int>& s) {
  if (static_cast<int>(assignment.size()) != g.n)
    throw std::invalid_argument("assignment length mismatch");
  std::vector<int> sub_index(static_cast<std::size_t>(g.n), -1);
  for (std::size_t a = 0; a < s.size(); ++a) {
    if (s[a] < 0 || s[a] >= g.n)
      throw std::invalid_argument("subset contains out-of-range node");
    if (sub_index[s[a]] != -1)
      throw std::invalid_argument("subset contains duplicate node");
    sub_index[s[a]] = static_cast<int>(a);
  }

  IsingHamiltonian sub(static_cast<int>(s.size()));
  double constant = 0.0;
  for (const auto& e : g.edges) {
    const double half = e.w / 2.0;
    const int a = sub_index[e.u], b = sub_index[e.v];
    if (a != -1 && b != -1) {
      sub.couplings.push_back({std::min(a, b), std::max(a, b), half});
    } else if (a != -1) {
      sub.fields[a] += half * spin_of(assignment[e.v]);
    } else if (b != -1) {
      sub.fields[b] += half * spin_of(assignment[e.u]);
    } else {
      constant += half * spin_of(assignment[e.u]) * spin_of(assignment[e.v]);
    }
    constant -= half;
  }
  sub.constant = constant;
  return sub;
}

inline Bits patch_assignment(const Bits& assignment, const std::vector<int>& s,
                             const Bits& x_s) {
  if (x_s.size() != s.size())
    throw std::invalid_argument("subproblem solution length mismatch");
  Bits out = assignment;
  for (std::size_t a = 0; a < s.size(); ++a) out[s[a]] = x_s[a];
  return out;
}

struct RefinementConfig {
  int mss = 82;  // max subproblem size (node count)
  int mur = 3;   // max consecutive unsuccessful refinements
  Subsolver subsolver;
  SubsolverBudget budget;
  std::uint64_t seed = 0;

  void validate() const {
    if (mss < 2) throw std::invalid_argument("MSS must be >= 2");
    if (mur < 1) throw std::invalid_argument("MUR must be >= 1");
    if (!subsolver) throw std::invalid_argument("no subsolver configured");
  }
};

struct RefineStats {
  int calls = 0;
  int accepted = 0;
  std::vector<char> accepted_flags;  // one entry per subsolver call
  std::string error;                 // nonempty if a subsolver call failed
};

namespace detail {

// Seeded random center node expanded breadth-first up to `mss` nodes.
inline std::vector<int> select_subset(const Adjacency& adj, int n, int mss,
                                      std::mt19937_64& rng) {
  std::uniform_int_distribution<int> pick(0, n - 1);
  const int center = pick(rng);
  std::vector<int> subset;
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  std::deque<int> queue{center};
  seen[center] = 1;
  while (!queue.empty() && static_cast<int>(subset.size()) < mss) {
    const int u = queue.front();
    queue.pop_front();
    subset.push_back(u);
    for (const auto& [v, w] : adj[u]) {
      if (seen[v]) continue;
      seen[v] = 1;
      queue.push_back(v);
    }
  }
  return subset;
}

}  // namespace detail

// Refinement loop at one level: repeatedly carve out a subproblem of at most
// MSS nodes around a random center, solve it, and patch the solution back in
// when the global cut strictly improves. Ends after MUR consecutive
// non-improving subproblems. A subsolver failure stops the loop with the
// best-so-far solution preserved and the error recorded.
inline std::pair<Bitstring, RefineStats> refine_level(
    const MaxCutGraph& g, const Bitstring& init, const RefinementConfig& cfg) {
  cfg.validate();
  if (static_cast<int>(init.bits.size()) != g.n)
    throw std::invalid_argument("initial solution length mismatch");
  const Adjacency adj = build_adjacency(g);
  auto rng = make_rng(cfg.seed);

  Bits current = init.bits;
  double current_cut = eval_cut(g, current);
  RefineStats stats;
  int failures = 0;
  while (failures < cfg.mur) {
    const std::vector<int> subset =
        detail::select_subset(adj, g.n, cfg.mss, rng);
    const IsingHamiltonian sub = extract_subproblem(g, current, subset);
    SubsolverBudget budget = cfg.budget;
    budget.seed = mix_seed(cfg.budget.seed, stats.calls);
    Bitstring sub_sol;
    try {
      sub_sol = cfg.subsolver(sub, budget);
    } catch (const std::exception& ex) {
      stats.error = ex.what();
      break;
    }
    ++stats.calls;
    const Bits candidate = patch_assignment(current, subset, sub_sol.bits);
    const double cut = eval_cut(g, candidate);
    if (cut > current_cut + 1e-9) {
      current = candidate;
      current_cut = cut;
      failures = 0;
      ++stats.accepted;
      stats.accepted_flags.push_back(1);
    } else {
      ++failures;
      stats.accepted_flags.push_back(0);
    }
  }
  return {Bitstring(std::move(current), CostModel::Cut, current_cut),
          std::move(stats)};
}

}  // namespace mlqubo
