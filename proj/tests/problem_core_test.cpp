#include <sstream>

#include <gtest/gtest.h>

#include "mlqubo/brute_force.hpp"
#include "mlqubo/instances.hpp"
#include "mlqubo/io.hpp"
#include "mlqubo/metrics.hpp"
#include "mlqubo/problem.hpp"
#include "test_util.hpp"

using namespace mlqubo;

namespace {
constexpr double kTol = 1e-9;
}

TEST(QuboToMaxcut, SingleDiagonalEntry) {
  const QuboProblem q(1, {{0, 0, 1.0}});
  const auto [g, rec] = qubo_to_maxcut(q);
  ASSERT_EQ(g.n, 2);
  ASSERT_EQ(g.edges.size(), 1u);
  EXPECT_EQ(g.edges[0].u, 0);
  EXPECT_EQ(g.edges[0].v, 1);
  EXPECT_DOUBLE_EQ(g.edges[0].w, 2.0);

  const auto cut_best = brute_force(g);
  const auto qubo_best = brute_force(q);
  const Bitstring recovered = recover_qubo_solution(cut_best.argbest, rec);
  EXPECT_EQ(recovered.bits, qubo_best.argbest.bits);
  EXPECT_EQ(recovered.bits, Bits({1}));
}

TEST(QuboToMaxcut, AffineRelationOverAllAssignments) {
  const QuboProblem q(2, {{0, 1, 1.0}});
  const auto [g, rec] = qubo_to_maxcut(q);
  ASSERT_EQ(g.n, 3);
  for (std::uint64_t idx = 0; idx < 8; ++idx) {
    const Bits y = testutil::bits_from_index(idx, 3);
    Bits x(2);
    for (int i = 0; i < 2; ++i) x[i] = y[i] ^ y[2];
    EXPECT_NEAR(eval_cut(g, y), rec.scale * eval_qubo(q, x) + rec.offset, kTol);
  }
  const auto cut_best = brute_force(g);
  const Bitstring recovered = recover_qubo_solution(cut_best.argbest, rec);
  EXPECT_NEAR(eval_qubo(q, recovered.bits), brute_force(q).c_max, kTol);
  EXPECT_EQ(recovered.bits, Bits({1, 1}));
}

TEST(QuboToMaxcut, ZeroMatrix) {
  const QuboProblem q(3, {});
  const auto [g, rec] = qubo_to_maxcut(q);
  EXPECT_EQ(g.n, 4);
  EXPECT_TRUE(g.edges.empty());
}

TEST(QuboToMaxcut, RoundTripOptimalityRandom) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 12; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 9);
    const QuboProblem q = testutil::random_qubo(n, rng);
    const auto [g, rec] = qubo_to_maxcut(q);
    for (std::uint64_t idx = 0; idx < (1ull << (n + 1)); ++idx) {
      const Bits y = testutil::bits_from_index(idx, n + 1);
      const Bitstring x = recover_qubo_solution(Bitstring(y), rec);
      ASSERT_NEAR(eval_cut(g, y), rec.scale * eval_qubo(q, x.bits) + rec.offset,
                  kTol);
    }
    const auto qubo_best = brute_force(q);
    const auto cut_best = brute_force(g);
    const Bitstring recovered = recover_qubo_solution(cut_best.argbest, rec);
    EXPECT_NEAR(eval_qubo(q, recovered.bits), qubo_best.c_max, kTol);
  }
}

TEST(RecoverQuboSolution, ComplementSymmetry) {
  ConversionRecord rec{ConversionKind::QuboToMaxcut, 2.0, 0.0, 2};
  EXPECT_EQ(recover_qubo_solution(Bitstring(Bits{1, 1, 0}), rec).bits,
            Bits({1, 1}));
  EXPECT_EQ(recover_qubo_solution(Bitstring(Bits{0, 0, 1}), rec).bits,
            Bits({1, 1}));
  EXPECT_EQ(recover_qubo_solution(Bitstring(Bits{0, 0, 0}), rec).bits,
            Bits({0, 0}));
  EXPECT_THROW(recover_qubo_solution(Bitstring(Bits{0, 0}), rec),
               std::invalid_argument);
}

TEST(MaxcutToIsing, SingleEdgeRelation) {
  const MaxCutGraph g(2, {{0, 1, 1.0}});
  const auto [h, rec] = maxcut_to_ising(g);
  EXPECT_DOUBLE_EQ(eval_ising(h, Bits{0, 1}), -1.0);
  EXPECT_DOUBLE_EQ(eval_cut(g, Bits{0, 1}), 1.0);
  EXPECT_DOUBLE_EQ(eval_ising(h, Bits{0, 0}), 1.0);
  EXPECT_DOUBLE_EQ(eval_cut(g, Bits{0, 0}), 0.0);
  for (std::uint64_t idx = 0; idx < 4; ++idx) {
    const Bits x = testutil::bits_from_index(idx, 2);
    EXPECT_NEAR(eval_cut(g, x), rec.scale * eval_ising(h, x) + rec.offset,
                kTol);
  }
}

TEST(MaxcutToIsing, EmptyGraph) {
  const MaxCutGraph g(3, {});
  const auto [h, rec] = maxcut_to_ising(g);
  EXPECT_TRUE(h.couplings.empty());
  EXPECT_DOUBLE_EQ(eval_ising(h, Bits{1, 0, 1}), 0.0);
}

TEST(MaxcutToIsing, ArgmaxEqualsArgmin) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 10; ++trial) {
    const MaxCutGraph g = testutil::random_graph(8, 0.6, rng);
    const auto [h, rec] = maxcut_to_ising(g);
    const auto cut_res = brute_force(g);
    const auto ising_res = brute_force(h);
    EXPECT_NEAR(eval_cut(g, ising_res.argbest.bits), cut_res.c_max, kTol);
  }
}

TEST(EvalCut, TriangleAndConstants) {
  const MaxCutGraph tri(3, {{0, 1, 1.0}, {0, 2, 1.0}, {1, 2, 1.0}});
  EXPECT_DOUBLE_EQ(eval_cut(tri, Bits{0, 1, 1}), 2.0);
  EXPECT_DOUBLE_EQ(eval_cut(tri, Bits{0, 0, 0}), 0.0);
  EXPECT_DOUBLE_EQ(eval_cut(tri, Bits{1, 1, 1}), 0.0);
  EXPECT_THROW(eval_cut(tri, Bits{0, 1}), std::invalid_argument);
}

TEST(EvalCut, ComplementSymmetryRandom) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    const MaxCutGraph g = testutil::random_graph(10, 0.5, rng);
    const Bits x = testutil::random_bits_local(10, rng);
    EXPECT_DOUBLE_EQ(eval_cut(g, x), eval_cut(g, complement(x)));
    EXPECT_NEAR(eval_cut(g, x), testutil::naive_eval_cut(g, x), kTol);
  }
}

TEST(EvalIsing, SmallCases) {
  IsingHamiltonian single(1);
  single.fields[0] = 1.0;
  EXPECT_DOUBLE_EQ(eval_ising(single, Bits{0}), 1.0);
  EXPECT_DOUBLE_EQ(eval_ising(single, Bits{1}), -1.0);

  IsingHamiltonian pair(2);
  pair.couplings.push_back({0, 1, 1.0});
  EXPECT_DOUBLE_EQ(eval_ising(pair, Bits{0, 1}), -1.0);
  EXPECT_THROW(eval_ising(pair, Bits{0}), std::invalid_argument);
}

TEST(EvalIsing, MatchesSpinProductOracle) {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 30; ++trial) {
    const IsingHamiltonian h =
        testutil::random_sk_ising(9, rng, false, true);
    const Bits x = testutil::random_bits_local(9, rng);
    EXPECT_NEAR(eval_ising(h, x), testutil::naive_eval_ising(h, x), kTol);
  }
}

TEST(ApplyGauge, IdentityAndExample) {
  IsingHamiltonian h(2);
  h.couplings.push_back({0, 1, 1.0});
  const IsingHamiltonian same = apply_gauge(h, GaugeVector::identity(2));
  EXPECT_DOUBLE_EQ(same.couplings[0].value, 1.0);

  const IsingHamiltonian flipped = apply_gauge(h, GaugeVector(Bits{1, 0}));
  EXPECT_DOUBLE_EQ(flipped.couplings[0].value, -1.0);
  EXPECT_DOUBLE_EQ(eval_ising(h, Bits{1, 0}), eval_ising(flipped, Bits{0, 0}));
  EXPECT_DOUBLE_EQ(eval_ising(flipped, Bits{0, 0}), -1.0);
}

TEST(ApplyGauge, InvolutionExact) {
  std::mt19937_64 rng(17);
  const IsingHamiltonian h = testutil::random_sk_ising(8, rng, false, true);
  const GaugeVector g(testutil::random_bits_local(8, rng));
  const IsingHamiltonian back = apply_gauge(apply_gauge(h, g), g);
  for (std::size_t k = 0; k < h.couplings.size(); ++k)
    EXPECT_DOUBLE_EQ(back.couplings[k].value, h.couplings[k].value);
  for (int i = 0; i < h.n; ++i)
    EXPECT_DOUBLE_EQ(back.fields[i], h.fields[i]);
  // composing a gauge with itself is the identity (entrywise XOR)
  EXPECT_EQ(g.composed_with(g).g, GaugeVector::identity(8).g);
}

TEST(ApplyGauge, CovarianceProperty) {
  std::mt19937_64 rng(19);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 9);
    const IsingHamiltonian h = testutil::random_sk_ising(n, rng, false, true);
    const GaugeVector g(testutil::random_bits_local(n, rng));
    const Bits x = testutil::random_bits_local(n, rng);
    EXPECT_NEAR(eval_ising(h, x),
                eval_ising(apply_gauge(h, g), apply_gauge_to_bits(x, g)), kTol);
  }
}

TEST(ApproximationRatio, SpotChecks) {
  EXPECT_DOUBLE_EQ(approximation_ratio(5, 0, 10, OptSense::Maximize), 0.5);
  EXPECT_DOUBLE_EQ(approximation_ratio(10, 0, 10, OptSense::Maximize), 1.0);
  EXPECT_DOUBLE_EQ(approximation_ratio(10, 0, 10, OptSense::Minimize), 0.0);
  // degenerate spectrum: everything is optimal
  EXPECT_DOUBLE_EQ(approximation_ratio(3, 3, 3, OptSense::Maximize), 1.0);
}

TEST(ApproximationRatio, BoundsProperty) {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    const double lo = unit(rng), hi = lo + unit(rng) + 0.1;
    const double c = lo + (hi - lo) * unit(rng);
    const double ar = approximation_ratio(c, lo, hi, OptSense::Maximize);
    EXPECT_GE(ar, 0.0);
    EXPECT_LE(ar, 1.0);
  }
}

TEST(Jaccard, IdentityComplementAndDisjoint) {
  const MaxCutGraph path(3, {{0, 1, 1.0}, {1, 2, 1.0}});
  EXPECT_DOUBLE_EQ(jaccard_cut_similarity(path, Bits{0, 1, 1}, Bits{0, 1, 1}),
                   1.0);
  EXPECT_DOUBLE_EQ(jaccard_cut_similarity(path, Bits{0, 1, 1}, Bits{1, 0, 0}),
                   1.0);
  EXPECT_DOUBLE_EQ(jaccard_cut_similarity(path, Bits{0, 1, 1}, Bits{0, 0, 1}),
                   0.0);
  EXPECT_DOUBLE_EQ(jaccard_cut_similarity(path, Bits{0, 0, 0}, Bits{1, 1, 1}),
                   1.0);
}

TEST(BruteForce, SmallInstances) {
  const MaxCutGraph edge(2, {{0, 1, 1.0}});
  const auto cut_res = brute_force(edge);
  EXPECT_DOUBLE_EQ(cut_res.c_min, 0.0);
  EXPECT_DOUBLE_EQ(cut_res.c_max, 1.0);

  IsingHamiltonian pair(2);
  pair.couplings.push_back({0, 1, 1.0});
  const auto ising_res = brute_force(pair);
  EXPECT_DOUBLE_EQ(ising_res.c_min, -1.0);
  EXPECT_DOUBLE_EQ(ising_res.c_max, 1.0);
  // lexicographic tie-break: (0,1) beats (1,0)
  EXPECT_EQ(ising_res.argbest.bits, Bits({0, 1}));

  EXPECT_THROW(brute_force(MaxCutGraph(30, {}), 24), std::invalid_argument);
}

TEST(BruteForce, MatchesIndependentEnumeration) {
  std::mt19937_64 rng(29);
  const IsingHamiltonian h = testutil::random_sk_ising(10, rng, true);
  const auto res = brute_force(h);
  const auto naive = testutil::naive_extrema(
      10, [&](const Bits& x) { return testutil::naive_eval_ising(h, x); });
  EXPECT_NEAR(res.c_min, naive.c_min, kTol);
  EXPECT_NEAR(res.c_max, naive.c_max, kTol);

  const MaxCutGraph g = testutil::random_graph(10, 0.4, rng);
  const auto cut_res = brute_force(g);
  const auto cut_naive = testutil::naive_extrema(
      10, [&](const Bits& x) { return testutil::naive_eval_cut(g, x); });
  EXPECT_NEAR(cut_res.c_min, cut_naive.c_min, kTol);
  EXPECT_NEAR(cut_res.c_max, cut_naive.c_max, kTol);
}

TEST(RandomizeWeights, DeterministicAndInRange) {
  std::mt19937_64 rng(31);
  const MaxCutGraph g = testutil::random_graph(12, 0.5, rng);
  const MaxCutGraph a = randomize_weights(g, 42);
  const MaxCutGraph b = randomize_weights(g, 42);
  const MaxCutGraph c = randomize_weights(g, 43);
  ASSERT_EQ(a.edges.size(), g.edges.size());
  bool any_diff = false;
  for (std::size_t e = 0; e < a.edges.size(); ++e) {
    EXPECT_DOUBLE_EQ(a.edges[e].w, b.edges[e].w);
    EXPECT_EQ(a.edges[e].u, g.edges[e].u);
    EXPECT_EQ(a.edges[e].v, g.edges[e].v);
    EXPECT_GE(a.edges[e].w, -1.0);
    EXPECT_LE(a.edges[e].w, 1.0);
    any_diff |= a.edges[e].w != c.edges[e].w;
  }
  EXPECT_TRUE(any_diff);
}

TEST(Io, MaxcutRoundTrip) {
  std::mt19937_64 rng(37);
  const MaxCutGraph g = testutil::random_graph(9, 0.5, rng);
  std::stringstream buf;
  write_maxcut(buf, g);
  const MaxCutGraph back = read_maxcut(buf);
  ASSERT_EQ(back.n, g.n);
  ASSERT_EQ(back.edges.size(), g.edges.size());
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    EXPECT_EQ(back.edges[e].u, g.edges[e].u);
    EXPECT_EQ(back.edges[e].v, g.edges[e].v);
    EXPECT_DOUBLE_EQ(back.edges[e].w, g.edges[e].w);
  }
}

TEST(Io, QuboRoundTripAndErrors) {
  std::mt19937_64 rng(41);
  const QuboProblem q = testutil::random_qubo(6, rng);
  std::stringstream buf;
  write_qubo(buf, q);
  const QuboProblem back = read_qubo(buf);
  ASSERT_EQ(back.n, q.n);
  ASSERT_EQ(back.terms.size(), q.terms.size());
  for (std::size_t t = 0; t < q.terms.size(); ++t)
    EXPECT_DOUBLE_EQ(back.terms[t].q, q.terms[t].q);

  std::stringstream bad("2 1\n1 1 0.5\n");
  EXPECT_THROW(read_maxcut(bad), std::runtime_error);
  std::stringstream truncated("3 2\n1 2 1.0\n");
  EXPECT_THROW(read_maxcut(truncated), std::runtime_error);
  std::stringstream dup_edge("3 2\n1 2 1.0\n2 1 0.5\n");
  EXPECT_THROW(read_maxcut(dup_edge), std::invalid_argument);
  std::stringstream dup_term("2\n0 1 1.0\n0 1 2.0\n");
  EXPECT_THROW(read_qubo(dup_term), std::invalid_argument);
}

TEST(Bitstring, StringHelpers) {
  EXPECT_EQ(bits_to_string(Bits{1, 0, 1}), "101");
  EXPECT_EQ(string_to_bits("011"), Bits({0, 1, 1}));
  EXPECT_THROW(string_to_bits("01x"), std::invalid_argument);
}
