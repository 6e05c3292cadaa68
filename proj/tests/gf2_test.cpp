#include <gtest/gtest.h>

#include <random>

#include "idxcode/gf2.hpp"
#include "idxcode/gk.hpp"
#include "support/oracles.hpp"

namespace idxcode {
namespace {

using testing::complete_graph;
using testing::random_graph;

BitMatrix random_matrix(int r, int c, std::mt19937_64& rng) {
  BitMatrix m(r, c);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) m.set(i, j, rng() & 1U);
  return m;
}

TEST(Gf2RankTest, Basics) {
  EXPECT_EQ(gf2_rank(BitMatrix::identity(7)), 7);
  EXPECT_EQ(gf2_rank(BitMatrix(4, 6)), 0);
  EXPECT_EQ(gf2_rank(BitMatrix::ones(2, 2)), 1);
  EXPECT_EQ(gf2_rank(BitMatrix(0, 0)), 0);
}

TEST(Gf2RankTest, AgreesWithSmallRankOracle) {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 12);
    BitMatrix m = random_matrix(n, n, rng);
    std::vector<std::uint32_t> rows;
    for (int i = 0; i < n; ++i) rows.push_back(static_cast<std::uint32_t>(m.row(i).to_mask()));
    EXPECT_EQ(gf2_rank(m), testing::small_rank(rows));
  }
}

TEST(Gf2RankTest, WideMatricesAcrossWordBoundary) {
  BitMatrix m(3, 130);
  m.set(0, 129);
  m.set(1, 64);
  m.set(2, 129);
  m.set(2, 64);
  EXPECT_EQ(gf2_rank(m), 2);
}

TEST(Gf2InverseTest, InverseOfRandomInvertibleMatrices) {
  std::mt19937_64 rng(2);
  int invertible = 0;
  for (int trial = 0; trial < 100; ++trial) {
    BitMatrix m = random_matrix(6, 6, rng);
    auto inv = gf2_inverse(m);
    EXPECT_EQ(inv.has_value(), gf2_rank(m) == 6);
    if (inv) {
      ++invertible;
      EXPECT_EQ(m * *inv, BitMatrix::identity(6));
      EXPECT_EQ(*inv * m, BitMatrix::identity(6));
    }
  }
  EXPECT_GT(invertible, 10);
}

TEST(RowBasisTest, ExpressesEveryRow) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    BitMatrix m = random_matrix(8, 10, rng);
    m.row(5) = m.row(1) ^ m.row(2);
    RowBasis basis(m);
    EXPECT_EQ(basis.rank(), gf2_rank(m));
    for (int i = 0; i < m.rows(); ++i) {
      auto c = basis.express(m.row(i));
      ASSERT_TRUE(c.has_value());
      BitVector recon(10);
      c->for_each([&](std::size_t j) { recon ^= m.row(basis.basis_rows()[j]); });
      EXPECT_EQ(recon, m.row(i));
    }
  }
}

TEST(RowBasisTest, BasisRowsAreLowestIndexFirst) {
  BitMatrix m = BitMatrix::ones(4, 3);
  m.row(3) = BitVector::from_string("100");
  RowBasis basis(m);
  EXPECT_EQ(basis.basis_rows(), (std::vector<int>{0, 3}));
  EXPECT_FALSE(basis.express(BitVector::from_string("010")).has_value());
}

TEST(RepresentsTest, Examples) {
  Graph c5 = testing::cycle_graph(5);
  EXPECT_TRUE(represents(BitMatrix::identity(5), c5));
  EXPECT_TRUE(represents(BitMatrix::ones(5, 5), complete_graph(5)));
  EXPECT_EQ(gf2_rank(BitMatrix::ones(5, 5)), 1);
  BitMatrix zero_diag = BitMatrix::identity(5);
  zero_diag.set(2, 2, false);
  EXPECT_FALSE(represents(zero_diag, complete_graph(5)));
  BitMatrix off = BitMatrix::identity(5);
  off.set(0, 2);  // 0 and 2 are not adjacent in C5
  EXPECT_FALSE(represents(off, c5));
  off = BitMatrix::identity(5);
  off.set(0, 1);
  EXPECT_TRUE(represents(off, c5));
  EXPECT_THROW(represents(BitMatrix::identity(4), c5), InputError);
}

TEST(BiRepresentationTest, GkLabelsRepresentComplement) {
  for (int k = 1; k <= 4; ++k) {
    auto gk = build_gk(k);
    EXPECT_TRUE(check_bi_representation(gk_label_bi_representation(gk), complement(gk.graph))) << "k=" << k;
  }
}

TEST(BiRepresentationTest, ConstantAssignment) {
  BiRepresentation b;
  b.k = 2;
  for (int i = 0; i < 4; ++i) b.vectors.emplace_back(BitVector::from_string("10"), BitVector::from_string("10"));
  EXPECT_TRUE(check_bi_representation(b, complete_graph(4)));
  Graph one_missing = complete_graph(4);
  one_missing.remove_edge(1, 3);
  EXPECT_FALSE(check_bi_representation(b, one_missing));
}

TEST(MinrankUpperTest, Examples) {
  Graph g = random_graph(9, 0.5, 4);
  EXPECT_EQ(minrank_upper_from_matrix(BitMatrix::identity(9), g), 9);
  EXPECT_EQ(minrank_upper_from_matrix(BitMatrix::ones(5, 5), complete_graph(5)), 1);
  EXPECT_THROW(minrank_upper_from_matrix(BitMatrix::ones(5, 5), g), InputError);
}

TEST(MinrankUpperTest, GramOfG3LabelsHasRankThree) {
  auto g3 = build_gk(3);
  Graph h = complement(g3.graph);
  BitMatrix a = matrix_from_bi_representation(gk_label_bi_representation(g3));
  ASSERT_TRUE(represents(a, h));
  EXPECT_EQ(minrank_upper_from_matrix(a, h), 3);
}

TEST(BitMatrixTextTest, RoundTripAndErrors) {
  std::mt19937_64 rng(9);
  BitMatrix m = random_matrix(5, 70, rng);
  const std::string text = save_bit_matrix(m);
  EXPECT_EQ(load_bit_matrix(text), m);
  EXPECT_EQ(save_bit_matrix(load_bit_matrix(text)), text);
  EXPECT_EQ(save_bit_matrix(BitMatrix::identity(2)), "2 2\n10\n01\n");
  EXPECT_THROW(load_bit_matrix("2 2\n10\n"), ParseError);
  EXPECT_THROW(load_bit_matrix("2 2\n10\n0a\n"), ParseError);
  EXPECT_THROW(load_bit_matrix("1 3\n10\n"), ParseError);
}

}  // namespace
}  // namespace idxcode
