#ifndef IDXCODE_GK_HPP
#define IDXCODE_GK_HPP

#include <Eigen/Dense>
#include <bit>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "idxcode/bits.hpp"
#include "idxcode/errors.hpp"
#include "idxcode/gf2.hpp"
#include "idxcode/graph.hpp"
#include "idxcode/spectral.hpp"

namespace idxcode {

inline constexpr int kMaxMaterializedK = 8;
inline constexpr int kMaxQuotientK = 30;

/// F2 inner product of two coordinate masks.
inline bool parity_dot(std::uint32_t a, std::uint32_t b) noexcept { return std::popcount(a & b) & 1; }

/// Vertex (v1, v2) of G_k. Coordinate i of a vector is bit i of the mask, so
/// e_1 is mask 1.
struct GkVertex {
  std::uint32_t v1 = 0;
  std::uint32_t v2 = 0;
  friend bool operator==(const GkVertex&, const GkVertex&) = default;
};

inline std::uint32_t unit_vector(int i) { return std::uint32_t{1} << i; }  // e_{i+1}

/// Class 1..5 of the partition around v0 = (e_1, e_1).
inline int gk_orbit_class(GkVertex v) noexcept {
  const bool b1 = v.v1 & 1U, b2 = v.v2 & 1U;
  if (v.v1 == 1U && v.v2 == 1U) return 1;
  if (!b1 && !b2) return 2;
  if (b1 != b2) return 3;
  if ((v.v1 == 1U || v.v2 == 1U) && v.v1 != v.v2) return 4;
  return 5;
}

/// G_k with its vertex labels. Vertices are ordered lexicographically by
/// (v1, v2) read as integers.
struct LabeledGkGraph {
  int k = 0;
  Graph graph;
  std::vector<GkVertex> labels;
  std::vector<int> orbit_class;  // 1..5 per vertex; empty for k < 3
  std::vector<int> index;        // (v1 << k | v2) -> vertex id, -1 when not a vertex

  int order() const noexcept { return graph.order(); }
  int id(GkVertex v) const noexcept { return index[(static_cast<std::size_t>(v.v1) << k) | v.v2]; }
  int id(std::uint32_t v1, std::uint32_t v2) const noexcept { return id(GkVertex{v1, v2}); }

  /// Vertices of class `c` (1..5).
  std::vector<int> orbit_members(int c) const {
    std::vector<int> out;
    for (int v = 0; v < order(); ++v)
      if (orbit_class[static_cast<std::size_t>(v)] == c) out.push_back(v);
    return out;
  }

  BitVector v1_bits(int v) const { return BitVector::from_mask(labels[v].v1, static_cast<std::size_t>(k)); }
  BitVector v2_bits(int v) const { return BitVector::from_mask(labels[v].v2, static_cast<std::size_t>(k)); }
};

inline long long gk_vertex_count(int k) { return ((1LL << k) - 1) * (1LL << (k - 1)); }
inline long long gk_degree(int k) { return k < 2 ? 0 : ((1LL << (k - 1)) - 1) * (1LL << (k - 2)); }

inline bool gk_adjacent(GkVertex u, GkVertex v) noexcept { return !parity_dot(u.v1, v.v2) && !parity_dot(v.v1, u.v2); }

inline LabeledGkGraph build_gk(int k) {
  if (k < 1 || k > kMaxMaterializedK) throw InputError("build_gk: k must be in [1, 8], got " + std::to_string(k));
  LabeledGkGraph gk;
  gk.k = k;
  const std::uint32_t top = std::uint32_t{1} << k;
  gk.index.assign(static_cast<std::size_t>(top) * top, -1);
  for (std::uint32_t a = 1; a < top; ++a) {
    for (std::uint32_t b = 1; b < top; ++b) {
      if (!parity_dot(a, b)) continue;
      gk.index[(static_cast<std::size_t>(a) << k) | b] = static_cast<int>(gk.labels.size());
      gk.labels.push_back({a, b});
    }
  }
  const int n = static_cast<int>(gk.labels.size());
  gk.graph = Graph(n);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (gk_adjacent(gk.labels[u], gk.labels[v])) gk.graph.add_edge(u, v);
  if (k >= 3) {
    gk.orbit_class.resize(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) gk.orbit_class[static_cast<std::size_t>(v)] = gk_orbit_class(gk.labels[v]);
  }
  return gk;
}

/// {(e_i, e_i)}: pairwise adjacent in G_k, hence independent in its complement.
inline VertexSet canonical_independent_set(const LabeledGkGraph& gk) {
  VertexSet s(gk.order());
  for (int i = 0; i < gk.k; ++i) s.insert(gk.id(unit_vector(i), unit_vector(i)));
  return s;
}

inline BiRepresentation gk_label_bi_representation(const LabeledGkGraph& gk) {
  BiRepresentation b;
  b.k = gk.k;
  for (int v = 0; v < gk.order(); ++v) b.vectors.emplace_back(gk.v1_bits(v), gk.v2_bits(v));
  return b;
}

// ---------------------------------------------------------------------------
// Automorphisms (x, y) -> (A x, A^{-t} y) for invertible A.

using Permutation = std::vector<int>;

inline std::uint32_t apply_mask(const BitMatrix& a, std::uint32_t x) {
  std::uint32_t y = 0;
  for (int i = 0; i < a.rows(); ++i)
    if (parity_dot(static_cast<std::uint32_t>(a.row(i).to_mask()), x)) y |= std::uint32_t{1} << i;
  return y;
}

inline bool is_automorphism(const Graph& g, const Permutation& p) {
  const int n = g.order();
  if (static_cast<int>(p.size()) != n) return false;
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  for (int x : p) {
    if (x < 0 || x >= n || seen[static_cast<std::size_t>(x)]) return false;
    seen[static_cast<std::size_t>(x)] = 1;
  }
  // A bijection mapping edges to edges is an automorphism of a finite graph.
  for (auto [u, v] : g.edges())
    if (!g.has_edge(p[u], p[v])) return false;
  return true;
}

/// Vertex permutation induced by A; throws when A is singular or the result
/// fails the automorphism check.
inline Permutation automorphism_from_matrix(const BitMatrix& a, const LabeledGkGraph& gk) {
  if (a.rows() != gk.k || a.cols() != gk.k) throw InputError("automorphism matrix must be k x k");
  auto inv = gf2_inverse(a);
  if (!inv) throw InputError("automorphism matrix is singular over F2");
  const BitMatrix inv_t = inv->transpose();
  Permutation p(static_cast<std::size_t>(gk.order()));
  for (int v = 0; v < gk.order(); ++v) {
    const int img = gk.id(apply_mask(a, gk.labels[v].v1), apply_mask(inv_t, gk.labels[v].v2));
    if (img < 0) throw SolverError("image of a vertex is not a vertex");
    p[static_cast<std::size_t>(v)] = img;
  }
  if (!is_automorphism(gk.graph, p)) throw SolverError("induced permutation is not an automorphism");
  return p;
}

/// Permutation matrix exchanging coordinates i and j (0-based).
inline BitMatrix coordinate_swap_matrix(int k, int i, int j) {
  BitMatrix m(k, k);
  for (int r = 0; r < k; ++r) {
    int c = r == i ? j : (r == j ? i : r);
    m.set(r, c);
  }
  return m;
}

/// First column v1, first row v2, identity elsewhere. Maps (e_1, e_1) to v
/// and fixes (e_2, e_2) when v is adjacent to it. Needs (v1)_1 = (v2)_1 = 1.
inline BitMatrix lift_from_e1_matrix(int k, GkVertex v) {
  if (!(v.v1 & 1U) || !(v.v2 & 1U)) throw InputError("first coordinates of both vectors must be 1");
  BitMatrix a = BitMatrix::identity(k);
  for (int r = 0; r < k; ++r) a.set(r, 0, (v.v1 >> r) & 1U);
  for (int c = 0; c < k; ++c) a.set(0, c, (v.v2 >> c) & 1U);
  return a;
}

/// Matrix of an automorphism sending (e_1, e_1) to v.
inline BitMatrix vertex_transitivity_matrix(int k, GkVertex v) {
  int i = 0;
  while (i < k && !((v.v1 & v.v2) >> i & 1U)) ++i;
  if (i == k) throw InputError("not a vertex of G_k");
  const BitMatrix swap = coordinate_swap_matrix(k, 0, i);
  const GkVertex swapped{apply_mask(swap, v.v1), apply_mask(swap, v.v2)};
  return swap * lift_from_e1_matrix(k, swapped);
}

/// Matrix of an automorphism sending u to (e_1, e_1) and v to (e_2, e_2) for
/// an edge {u, v}.
inline BitMatrix edge_transitivity_matrix(const LabeledGkGraph& gk, int u, int v) {
  const int k = gk.k;
  if (k < 2) throw InputError("G_k has no edges for k < 2");
  if (!gk.graph.has_edge(u, v)) throw InputError("vertices are not adjacent");
  // f1: v -> (e_2, e_2). The map (e_1,e_1) -> v composed with the 1<->2 swap
  // sends (e_2,e_2) to v; invert it.
  const BitMatrix to_v = vertex_transitivity_matrix(k, gk.labels[v]) * coordinate_swap_matrix(k, 0, 1);
  const BitMatrix f1 = *gf2_inverse(to_v);
  auto act = [&](const BitMatrix& m, GkVertex x) {
    const BitMatrix inv_t = gf2_inverse(m)->transpose();
    return GkVertex{apply_mask(m, x.v1), apply_mask(inv_t, x.v2)};
  };
  const GkVertex u1 = act(f1, gk.labels[u]);
  // Coordinate 2 of both vectors of u1 vanishes; pick i != 2 where both are 1.
  int i = 0;
  while (i < k && (i == 1 || !((u1.v1 & u1.v2) >> i & 1U))) ++i;
  const BitMatrix f2 = coordinate_swap_matrix(k, 0, i);
  const GkVertex u2 = act(f2, u1);
  const BitMatrix f3 = lift_from_e1_matrix(k, u2);
  return *gf2_inverse(f3) * f2 * f1;
}

/// diag(1, B): fixes (e_1, e_1) and preserves the first coordinate of both
/// vectors of every vertex.
inline BitMatrix stabilizer_matrix(const BitMatrix& b) {
  const int k = b.rows() + 1;
  BitMatrix a(k, k);
  a.set(0, 0);
  for (int r = 0; r < b.rows(); ++r)
    for (int c = 0; c < b.cols(); ++c) a.set(r + 1, c + 1, b.get(r, c));
  return a;
}

// ---------------------------------------------------------------------------
// Quotient over the 5-class partition.

struct QuotientMatrix {
  Eigen::Matrix<double, 5, 5> m;
  std::vector<double> class_sizes;  // |V_1| .. |V_5|
};

inline std::vector<double> gk_class_sizes(int k) {
  const double a = std::ldexp(1.0, k - 1) - 1.0;  // 2^{k-1} - 1
  return {1.0, std::ldexp(1.0, k - 2) * a, std::ldexp(1.0, k - 1) * a, 2.0 * a, (std::ldexp(1.0, k - 2) - 1.0) * a};
}

/// M_k in closed form; valid for 3 <= k <= 30 without building G_k.
inline QuotientMatrix closed_form_quotient_matrix(int k) {
  if (k < 3 || k > kMaxQuotientK) throw InputError("quotient matrix needs 3 <= k <= 30");
  auto p = [](int e) { return std::ldexp(1.0, e); };
  const double a = p(k - 2) - 1.0, b = p(k - 3) - 1.0;
  QuotientMatrix q;
  q.m << 0, p(k - 2) * (p(k - 1) - 1), 0, 0, 0,                       //
      1, p(k - 3) * a, p(k - 2) * a, 2 * a, a * b,                     //
      0, p(k - 3) * a, p(k - 2) * a, p(k - 2), p(k - 3) * a,           //
      0, p(k - 2) * a, p(2 * k - 4), 0, 0,                             //
      0, p(k - 2) * b, p(2 * k - 4), 0, p(2 * k - 5);
  q.class_sizes = gk_class_sizes(k);
  return q;
}

/// M_k computed from the materialized graph and its orbit classes.
inline QuotientMatrix quotient_matrix(const LabeledGkGraph& gk) {
  if (gk.k < 3) throw InputError("quotient matrix needs k >= 3");
  std::vector<int> classes(gk.orbit_class.size());
  for (std::size_t v = 0; v < classes.size(); ++v) classes[v] = gk.orbit_class[v] - 1;
  auto pq = partition_quotient(gk.graph, classes);
  QuotientMatrix q;
  q.m = pq.matrix;
  q.class_sizes = pq.class_sizes;
  return q;
}

inline QuotientMatrix quotient_matrix(int k) { return quotient_matrix(build_gk(k)); }

inline Spectrum quotient_spectrum(const QuotientMatrix& q) { return quotient_eigenvalues(q.m, q.class_sizes); }

/// The five closed-form eigenvalues of M_k, ascending.
inline std::vector<double> gk_closed_form_eigenvalues(int k) {
  const double r = std::pow(2.0, 1.5 * k - 3.0);
  return {-r, -std::ldexp(1.0, k - 2), std::ldexp(1.0, k - 3), r, static_cast<double>(gk_degree(k))};
}

/// 2^{k/2} + 1 - 2^{1 - k/2}.
inline double kappa(int k) {
  if (k < 1) throw InputError("kappa needs k >= 1");
  return std::pow(2.0, k / 2.0) + 1.0 - std::pow(2.0, 1.0 - k / 2.0);
}

/// theta(complement G_k) = 1 - lambda_1 / lambda_n from the quotient spectrum.
inline double theta_gk_complement(int k) {
  const auto s = quotient_spectrum(closed_form_quotient_matrix(k));
  return 1.0 - s.values.back() / s.values.front();
}

}  // namespace idxcode

#endif  // IDXCODE_GK_HPP
