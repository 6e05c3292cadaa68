#include <gtest/gtest.h>

#include <random>

#include "idxcode/minrank.hpp"
#include "support/oracles.hpp"

namespace idxcode {
namespace {

using testing::brute_force_minrank;
using testing::complete_graph;
using testing::cycle_graph;
using testing::random_graph;

int exact_minrank(const Graph& g) {
  auto r = minrank_oracle(g, 5);
  EXPECT_EQ(r.status, MinrankStatus::exact);
  return r.value;
}

TEST(MinrankOracleTest, CompleteGraphsHaveMinrankOne) {
  for (int n = 1; n <= 8; ++n) EXPECT_EQ(exact_minrank(complete_graph(n)), 1) << "n=" << n;
}

TEST(MinrankOracleTest, ComplementOfBipartiteHasMinrankTwo) { EXPECT_EQ(exact_minrank(complement(cycle_graph(6))), 2); }

TEST(MinrankOracleTest, FiveCycleHasMinrankThree) {
  EXPECT_EQ(brute_force_minrank(cycle_graph(5)), 3);
  EXPECT_EQ(exact_minrank(cycle_graph(5)), 3);
}

TEST(MinrankOracleTest, ComplementOfG3HasMinrankThree) {
  auto g3 = build_gk(3);
  EXPECT_EQ(exact_minrank(complement(g3.graph)), 3);
}

TEST(MinrankOracleTest, EdgelessGraphExceedsSmallCap) {
  auto r = minrank_oracle(Graph(6), 5);
  EXPECT_EQ(r.status, MinrankStatus::exceeds);
  EXPECT_EQ(exact_minrank(Graph(4)), 4);
  EXPECT_EQ(exact_minrank(Graph(0)), 0);
}

TEST(MinrankOracleTest, WitnessIsABiRepresentation) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Graph g = random_graph(8, 0.6, seed);
    auto r = minrank_oracle(g, 5);
    ASSERT_EQ(r.status, MinrankStatus::exact);
    ASSERT_TRUE(r.witness.has_value());
    EXPECT_EQ(r.witness->k, r.value);
    EXPECT_TRUE(check_bi_representation(*r.witness, g));
    BitMatrix a = matrix_from_bi_representation(*r.witness);
    EXPECT_TRUE(represents(a, g));
    EXPECT_LE(gf2_rank(a), r.value);
  }
}

TEST(MinrankOracleTest, BudgetExhaustionIsUnknown) {
  auto r = minrank_oracle(complement(build_gk(3).graph), 3, 5);
  EXPECT_EQ(r.status, MinrankStatus::unknown);
}

TEST(MinrankOracleTest, RejectsBadCap) {
  EXPECT_THROW(minrank_oracle(cycle_graph(5), 0), InputError);
  EXPECT_THROW(minrank_oracle(cycle_graph(5), 6), InputError);
}

TEST(MinrankOracleTest, AgreesWithExhaustiveEnumerationUpToFiveVertices) {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const int n = 1 + static_cast<int>(seed % 5);
    Graph g = random_graph(n, 0.2 + 0.1 * static_cast<double>(seed % 7), seed);
    EXPECT_EQ(exact_minrank(g), brute_force_minrank(g)) << "seed " << seed;
  }
}

TEST(MinrankOracleTest, NeverAboveRankOfSampledRepresentingMatrices) {
  std::mt19937_64 rng(77);
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const int n = 3 + static_cast<int>(seed % 7);
    Graph g = random_graph(n, 0.5, 1000 + seed);
    const int m = exact_minrank(g);
    for (int sample = 0; sample < 50; ++sample) {
      BitMatrix a = BitMatrix::identity(n);
      for (auto [u, v] : g.edges()) {
        a.set(u, v, rng() & 1U);
        a.set(v, u, rng() & 1U);
      }
      EXPECT_LE(m, gf2_rank(a));
    }
  }
}

TEST(MinrankOracleTest, NeighborhoodLemma) {
  // minrk2(complement G) = k >= 2 implies minrk2(complement G[N(v)]) <= k - 1.
  int checked = 0;
  for (std::uint64_t seed = 0; checked < 20; ++seed) {
    const int k = 2 + static_cast<int>(seed % 2);
    Graph g = gen_bounded_minrank_instance(10, k, 0.8, 500 + seed);
    const int m = exact_minrank(complement(g));
    if (m < 2) continue;
    ++checked;
    for (int v = 0; v < g.order(); ++v) {
      if (g.degree(v) == 0) continue;
      auto sub = induced_subgraph(g, VertexSet(g.neighbors(v)));
      EXPECT_LE(exact_minrank(complement(sub.graph)), m - 1) << "seed " << seed << " v " << v;
    }
  }
}

TEST(MinrankOracleTest, AddingEdgesNeverIncreasesMinrank) {
  std::mt19937_64 rng(8);
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    Graph g = random_graph(8, 0.4, 300 + seed);
    int prev = exact_minrank(g);
    for (int step = 0; step < 4; ++step) {
      const int u = static_cast<int>(rng() % 8), v = static_cast<int>(rng() % 8);
      if (u == v) continue;
      g.add_edge(u, v);
      const int now = exact_minrank(g);
      EXPECT_LE(now, prev);
      prev = now;
    }
  }
}

}  // namespace
}  // namespace idxcode
