#include <gtest/gtest.h>

#include <bit>
#include <cmath>
#include <random>

#include "idxcode/gk.hpp"
#include "idxcode/minrank.hpp"

namespace idxcode {
namespace {

bool dot(std::uint32_t a, std::uint32_t b) { return std::popcount(a & b) % 2 == 1; }

BitMatrix random_invertible(int k, std::mt19937_64& rng) {
  while (true) {
    BitMatrix m(k, k);
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j) m.set(i, j, rng() & 1U);
    if (gf2_rank(m) == k) return m;
  }
}

TEST(BuildGkTest, SmallCases) {
  auto g1 = build_gk(1);
  ASSERT_EQ(g1.order(), 1);
  EXPECT_EQ(g1.labels[0], (GkVertex{1U, 1U}));
  EXPECT_EQ(g1.graph.edge_count(), 0u);

  auto g2 = build_gk(2);
  ASSERT_EQ(g2.order(), 6);
  for (int v = 0; v < 6; ++v) EXPECT_EQ(g2.graph.degree(v), 1);
  EXPECT_EQ(g2.graph.edge_count(), 3u);

  auto g3 = build_gk(3);
  EXPECT_EQ(g3.order(), 28);
  for (int v = 0; v < 28; ++v) EXPECT_EQ(g3.graph.degree(v), 6);
}

TEST(BuildGkTest, CountsMatchFormulas) {
  for (int k = 1; k <= 6; ++k) {
    auto gk = build_gk(k);
    const long long expected_n = ((1LL << k) - 1) << (k - 1);
    const long long expected_d = k < 2 ? 0 : ((1LL << (k - 1)) - 1) << (k - 2);
    EXPECT_EQ(gk.order(), expected_n) << "k=" << k;
    EXPECT_EQ(gk_vertex_count(k), expected_n);
    EXPECT_EQ(gk_degree(k), expected_d);
    for (int v = 0; v < gk.order(); ++v) ASSERT_EQ(gk.graph.degree(v), expected_d) << "k=" << k;
  }
}

TEST(BuildGkTest, AdjacencyMatchesLabelRuleAndOrder) {
  for (int k = 2; k <= 4; ++k) {
    auto gk = build_gk(k);
    std::vector<GkVertex> expected;
    for (std::uint32_t a = 0; a < (1U << k); ++a)
      for (std::uint32_t b = 0; b < (1U << k); ++b)
        if (dot(a, b)) expected.push_back({a, b});
    ASSERT_EQ(gk.labels, expected);
    for (int u = 0; u < gk.order(); ++u) {
      EXPECT_EQ(gk.id(gk.labels[u]), u);
      for (int v = 0; v < gk.order(); ++v) {
        if (u == v) continue;
        const auto& x = gk.labels[u];
        const auto& y = gk.labels[v];
        EXPECT_EQ(gk.graph.has_edge(u, v), !dot(x.v1, y.v2) && !dot(y.v1, x.v2));
      }
    }
    EXPECT_EQ(gk.id(0U, 0U), -1);
  }
}

TEST(BuildGkTest, RejectsOutOfRange) {
  EXPECT_THROW(build_gk(0), InputError);
  EXPECT_THROW(build_gk(9), InputError);
}

TEST(OrbitClassTest, SizesMatchClosedForms) {
  for (int k = 3; k <= 6; ++k) {
    auto gk = build_gk(k);
    const long long a = (1LL << (k - 1)) - 1;
    const std::vector<long long> expected{1, (1LL << (k - 2)) * a, (1LL << (k - 1)) * a, 2 * a, ((1LL << (k - 2)) - 1) * a};
    long long total = 0;
    for (int c = 1; c <= 5; ++c) {
      const auto members = gk.orbit_members(c);
      EXPECT_EQ(static_cast<long long>(members.size()), expected[c - 1]) << "k=" << k << " class " << c;
      EXPECT_EQ(static_cast<double>(members.size()), gk_class_sizes(k)[c - 1]);
      total += static_cast<long long>(members.size());
    }
    EXPECT_EQ(total, gk.order());
    EXPECT_EQ(gk.orbit_class[gk.id(1U, 1U)], 1);
  }
}

TEST(CanonicalIndependentSetTest, PairwiseAdjacentInGk) {
  auto g1 = build_gk(1);
  EXPECT_EQ(canonical_independent_set(g1).members(), (std::vector<int>{0}));
  for (int k = 2; k <= 5; ++k) {
    auto gk = build_gk(k);
    auto s = canonical_independent_set(gk);
    EXPECT_EQ(s.size(), k);
    EXPECT_TRUE(is_independent(complement(gk.graph), s));
  }
}

TEST(CanonicalIndependentSetTest, CertifiesMinrankOfComplementG3) {
  auto g3 = build_gk(3);
  Graph h = complement(g3.graph);
  // An independent set of size 3 in h forces minrk2(h) >= 3; the labels give <= 3.
  EXPECT_EQ(canonical_independent_set(g3).size(), 3);
  EXPECT_EQ(minrank_oracle(h, 3).value, 3);
  EXPECT_EQ(minrank_upper_from_matrix(matrix_from_bi_representation(gk_label_bi_representation(g3)), h), 3);
}

TEST(AutomorphismTest, IdentityAndSwaps) {
  auto g4 = build_gk(4);
  Permutation id = automorphism_from_matrix(BitMatrix::identity(4), g4);
  for (int v = 0; v < g4.order(); ++v) EXPECT_EQ(id[v], v);
  const int e1 = g4.id(1U, 1U);
  for (int i = 1; i < 4; ++i) {
    Permutation p = automorphism_from_matrix(coordinate_swap_matrix(4, 0, i), g4);
    EXPECT_EQ(p[e1], g4.id(unit_vector(i), unit_vector(i)));
  }
  BitMatrix singular(4, 4);
  EXPECT_THROW(automorphism_from_matrix(singular, g4), InputError);
}

TEST(AutomorphismTest, LiftFromE1) {
  auto g4 = build_gk(4);
  const int e1 = g4.id(1U, 1U);
  for (int v = 0; v < g4.order(); ++v) {
    const auto& lab = g4.labels[v];
    if (!(lab.v1 & 1U) || !(lab.v2 & 1U)) continue;
    Permutation p = automorphism_from_matrix(lift_from_e1_matrix(4, lab), g4);
    EXPECT_EQ(p[e1], v);
  }
}

TEST(AutomorphismTest, RandomMatricesGiveAutomorphisms) {
  std::mt19937_64 rng(21);
  auto g4 = build_gk(4);
  for (int t = 0; t < 20; ++t) EXPECT_TRUE(is_automorphism(g4.graph, automorphism_from_matrix(random_invertible(4, rng), g4)));
}

TEST(AutomorphismTest, VertexTransitivitySpotCheck) {
  std::mt19937_64 rng(22);
  for (int k = 3; k <= 5; ++k) {
    auto gk = build_gk(k);
    const int e1 = gk.id(1U, 1U);
    for (int t = 0; t < 20; ++t) {
      const int v = static_cast<int>(rng() % static_cast<std::uint64_t>(gk.order()));
      Permutation p = automorphism_from_matrix(vertex_transitivity_matrix(k, gk.labels[v]), gk);
      EXPECT_TRUE(is_automorphism(gk.graph, p));
      EXPECT_EQ(p[e1], v) << "k=" << k;
    }
  }
}

TEST(AutomorphismTest, EdgeTransitivitySpotCheck) {
  std::mt19937_64 rng(23);
  for (int k = 3; k <= 5; ++k) {
    auto gk = build_gk(k);
    auto edges = gk.graph.edges();
    const int e1 = gk.id(1U, 1U), e2 = gk.id(2U, 2U);
    for (int t = 0; t < 20; ++t) {
      auto [u, v] = edges[rng() % edges.size()];
      if (rng() & 1U) std::swap(u, v);
      Permutation p = automorphism_from_matrix(edge_transitivity_matrix(gk, u, v), gk);
      EXPECT_EQ(p[u], e1);
      EXPECT_EQ(p[v], e2);
    }
  }
}

TEST(AutomorphismTest, StabilizerRefinesOrbitClasses) {
  std::mt19937_64 rng(24);
  for (int k = 3; k <= 4; ++k) {
    auto gk = build_gk(k);
    for (int t = 0; t < 50; ++t) {
      Permutation p = automorphism_from_matrix(stabilizer_matrix(random_invertible(k - 1, rng)), gk);
      for (int v = 0; v < gk.order(); ++v) ASSERT_EQ(gk.orbit_class[p[v]], gk.orbit_class[v]);
    }
  }
}

TEST(QuotientMatrixTest, K3MatchesPublishedMatrix) {
  auto q = quotient_matrix(3);
  const double expected[5][5] = {{0, 6, 0, 0, 0}, {1, 1, 2, 2, 0}, {0, 1, 2, 2, 1}, {0, 2, 4, 0, 0}, {0, 0, 4, 0, 2}};
  for (int a = 0; a < 5; ++a) {
    EXPECT_DOUBLE_EQ(q.m.row(a).sum(), 6.0);
    for (int b = 0; b < 5; ++b) EXPECT_DOUBLE_EQ(q.m(a, b), expected[a][b]);
  }
  EXPECT_THROW(quotient_matrix(2), InputError);
}

TEST(QuotientMatrixTest, ClosedFormMatchesBuiltGraph) {
  for (int k = 3; k <= 7; ++k) {
    auto built = quotient_matrix(k);
    auto closed = closed_form_quotient_matrix(k);
    for (int a = 0; a < 5; ++a)
      for (int b = 0; b < 5; ++b) EXPECT_DOUBLE_EQ(built.m(a, b), closed.m(a, b)) << "k=" << k << " (" << a << "," << b << ")";
    EXPECT_EQ(built.class_sizes, closed.class_sizes);
  }
  for (int k = 3; k <= 30; ++k) {
    auto q = closed_form_quotient_matrix(k);
    for (int a = 0; a < 5; ++a) EXPECT_NEAR(q.m.row(a).sum(), static_cast<double>(gk_degree(k)), 1e-9 * gk_degree(k));
  }
}

TEST(QuotientMatrixTest, EigenvaluesOfM3) {
  auto s = quotient_spectrum(quotient_matrix(3));
  const double r = 2.0 * std::sqrt(2.0);
  const std::vector<double> expected{-r, -2.0, 1.0, r, 6.0};
  ASSERT_EQ(s.values.size(), 5u);
  for (std::size_t i = 0; i < 5; ++i) EXPECT_NEAR(s.values[i], expected[i], 1e-9);
}

TEST(QuotientMatrixTest, ClosedFormEigenvaluesForLargeK) {
  for (int k = 3; k <= 30; ++k) {
    auto s = quotient_spectrum(closed_form_quotient_matrix(k));
    auto expected = gk_closed_form_eigenvalues(k);
    const double scale = static_cast<double>(gk_degree(k));
    for (std::size_t i = 0; i < 5; ++i) EXPECT_NEAR(s.values[i], expected[i], 1e-11 * scale) << "k=" << k;
  }
}

TEST(KappaTest, Examples) {
  EXPECT_NEAR(kappa(3), 1.0 + 3.0 / std::sqrt(2.0), 1e-12);
  EXPECT_NEAR(kappa(3), 3.1213203, 1e-7);
  EXPECT_NEAR(kappa(4), 4.5, 1e-12);
  EXPECT_NEAR(1.0 - 28.0 / -8.0, 4.5, 1e-12);
  EXPECT_NEAR(kappa(2), 2.0, 1e-12);
}

TEST(KappaTest, SpectralRouteAgrees) {
  for (int k = 3; k <= 8; ++k) EXPECT_NEAR(theta_gk_complement(k), kappa(k), 1e-9) << "k=" << k;
}

}  // namespace
}  // namespace idxcode
