#include <gtest/gtest.h>

#include "idxcode/graph.hpp"
#include "idxcode/minrank.hpp"
#include "support/oracles.hpp"

namespace idxcode {
namespace {

using testing::complete_graph;
using testing::cycle_graph;
using testing::random_graph;

TEST(ComplementTest, CompleteGraphBecomesEdgeless) {
  Graph c = complement(complete_graph(3));
  EXPECT_EQ(c.order(), 3);
  EXPECT_EQ(c.edge_count(), 0u);
}

TEST(ComplementTest, FiveCycleIsSelfComplementary) {
  Graph c = complement(cycle_graph(5));
  // 0-2-4-1-3-0 is the complement cycle; relabel i -> 2i mod 5 maps C5 onto it.
  for (int i = 0; i < 5; ++i) EXPECT_TRUE(c.has_edge((2 * i) % 5, (2 * (i + 1)) % 5));
  EXPECT_EQ(c.edge_count(), 5u);
}

TEST(ComplementTest, InvolutionOnRandomGraphs) {
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    Graph g = random_graph(1 + static_cast<int>(seed % 17), 0.4, seed);
    EXPECT_EQ(complement(complement(g)), g) << "seed " << seed;
  }
}

TEST(InducedSubgraphTest, FullSetIsACopy) {
  Graph g = cycle_graph(6);
  auto sub = induced_subgraph(g, VertexSet::all(6));
  EXPECT_EQ(sub.graph, g);
  EXPECT_EQ(sub.vertices, (std::vector<int>{0, 1, 2, 3, 4, 5}));
}

TEST(InducedSubgraphTest, EmptySet) {
  auto sub = induced_subgraph(cycle_graph(5), VertexSet(5));
  EXPECT_EQ(sub.graph.order(), 0);
  EXPECT_TRUE(sub.vertices.empty());
}

TEST(InducedSubgraphTest, NeighborsInFiveCycleAreIsolated) {
  Graph g = cycle_graph(5);
  auto sub = induced_subgraph(g, VertexSet(g.neighbors(0)));
  EXPECT_EQ(sub.graph.order(), 2);
  EXPECT_EQ(sub.graph.edge_count(), 0u);
  EXPECT_EQ(sub.vertices, (std::vector<int>{1, 4}));
}

TEST(InducedSubgraphTest, OutOfRangeMemberIsRejected) {
  EXPECT_THROW(induced_subgraph(cycle_graph(4), std::vector<int>{0, 4}), InputError);
}

TEST(InducedSubgraphTest, PreservesAdjacencyUnderIndexMap) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    Graph g = random_graph(14, 0.35, 100 + trial);
    VertexSet s(14);
    for (int v = 0; v < 14; ++v)
      if (rng() & 1U) s.insert(v);
    auto sub = induced_subgraph(g, s);
    for (int a = 0; a < sub.graph.order(); ++a)
      for (int b = 0; b < sub.graph.order(); ++b)
        if (a != b) {
          EXPECT_EQ(sub.graph.has_edge(a, b), g.has_edge(sub.vertices[a], sub.vertices[b]));
        }
  }
}

TEST(MaxDegreeVertexTest, Star) {
  Graph g = Graph::from_edges(5, {{0, 1}, {0, 2}, {0, 3}, {0, 4}});
  EXPECT_EQ(max_degree_vertex(g), 0);
}

TEST(MaxDegreeVertexTest, EdgelessPicksLowestIndex) { EXPECT_EQ(max_degree_vertex(Graph(4)), 0); }

TEST(MaxDegreeVertexTest, PathCenter) { EXPECT_EQ(max_degree_vertex(Graph::from_edges(3, {{0, 1}, {1, 2}})), 1); }

TEST(MaxDegreeVertexTest, EmptyGraphIsAnError) { EXPECT_THROW(max_degree_vertex(Graph(0)), InputError); }

TEST(EdgeListTest, LoadsPath) {
  auto r = load_edge_list("3 2\n0 1\n1 2");
  EXPECT_EQ(r.graph, Graph::from_edges(3, {{0, 1}, {1, 2}}));
  EXPECT_EQ(r.duplicate_edges, 0);
}

TEST(EdgeListTest, CommentsAndCanonicalSave) {
  auto r = load_edge_list("# a triangle, unordered\n3 4\n2 1\n# mid\n0 2\n1 0\n0 1\n");
  EXPECT_EQ(r.duplicate_edges, 1);
  EXPECT_EQ(save_edge_list(r.graph), "3 3\n0 1\n0 2\n1 2\n");
  // Canonical text is a fixed point.
  EXPECT_EQ(save_edge_list(load_edge_list(save_edge_list(r.graph)).graph), save_edge_list(r.graph));
}

TEST(EdgeListTest, RoundTripOnRandomGraphs) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    Graph g = random_graph(12, 0.3, seed);
    EXPECT_EQ(load_edge_list(save_edge_list(g)).graph, g);
  }
}

TEST(EdgeListTest, ErrorsCarryLineNumbers) {
  try {
    load_edge_list("2 1\n0 2");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2);
  }
  try {
    load_edge_list("3 2\n0 1\n1 1\n");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3);
  }
  EXPECT_THROW(load_edge_list("3 1\n0 x\n"), ParseError);
  EXPECT_THROW(load_edge_list("3 2\n0 1\n"), ParseError);
  EXPECT_THROW(load_edge_list(""), ParseError);
}

TEST(GeneratorTest, ZeroProbabilityGivesEdgelessGraph) {
  Graph g = gen_bounded_minrank_instance(7, 3, 0.0, 11);
  EXPECT_EQ(g.order(), 7);
  EXPECT_EQ(g.edge_count(), 0u);
  // Complement is K_7, whose minrank is 1.
  EXPECT_EQ(minrank_oracle(complement(g), 3).value, 1);
}

TEST(GeneratorTest, DeterministicGivenSeed) {
  EXPECT_EQ(gen_bounded_minrank_instance(30, 3, 0.5, 4), gen_bounded_minrank_instance(30, 3, 0.5, 4));
  EXPECT_NE(gen_bounded_minrank_instance(30, 3, 0.5, 4), gen_bounded_minrank_instance(30, 3, 0.5, 5));
}

TEST(GeneratorTest, SpecExamplesPassTheOracle) {
  auto r1 = minrank_oracle(complement(gen_bounded_minrank_instance(8, 3, 0.5, 1)), 5);
  ASSERT_EQ(r1.status, MinrankStatus::exact);
  EXPECT_LE(r1.value, 3);
  auto r2 = minrank_oracle(complement(gen_bounded_minrank_instance(6, 2, 1.0, 7)), 5);
  ASSERT_EQ(r2.status, MinrankStatus::exact);
  EXPECT_LE(r2.value, 2);
}

TEST(GeneratorTest, OutputAlwaysWithinBound) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const int k = 2 + static_cast<int>(seed % 3);
    const int n = 4 + static_cast<int>(seed % 7);
    Graph g = gen_bounded_minrank_instance(n, k, 0.7, seed);
    auto r = minrank_oracle(complement(g), 5);
    ASSERT_EQ(r.status, MinrankStatus::exact) << "seed " << seed;
    EXPECT_LE(r.value, k) << "seed " << seed;
  }
}

TEST(GeneratorTest, LabelsFormAHomomorphism) {
  auto inst = generate_bounded_minrank_instance(60, 3, 0.8, 3);
  auto gk = build_gk(3);
  for (auto [u, v] : inst.graph.edges()) EXPECT_TRUE(gk.graph.has_edge(inst.labels[u], inst.labels[v]));
}

}  // namespace
}  // namespace idxcode
