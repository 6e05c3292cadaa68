#ifndef IDXCODE_GF2_HPP
#define IDXCODE_GF2_HPP

#include <cstddef>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "idxcode/bits.hpp"
#include "idxcode/errors.hpp"
#include "idxcode/graph.hpp"

namespace idxcode {

/// r x c matrix over F2 stored as r row bit vectors of width c.
class BitMatrix {
 public:
  BitMatrix() = default;
  BitMatrix(int rows, int cols) : cols_(cols), rows_(static_cast<std::size_t>(rows), BitVector(static_cast<std::size_t>(cols))) {
    if (rows < 0 || cols < 0) throw InputError("negative matrix dimension");
  }
  static BitMatrix identity(int n) {
    BitMatrix m(n, n);
    for (int i = 0; i < n; ++i) m.set(i, i);
    return m;
  }
  static BitMatrix ones(int rows, int cols) {
    BitMatrix m(rows, cols);
    for (auto& r : m.rows_) r.set_all();
    return m;
  }
  static BitMatrix from_rows(std::vector<BitVector> rows, int cols) {
    BitMatrix m;
    m.cols_ = cols;
    for (const auto& r : rows)
      if (static_cast<int>(r.size()) != cols) throw InputError("row width does not match column count");
    m.rows_ = std::move(rows);
    return m;
  }

  int rows() const noexcept { return static_cast<int>(rows_.size()); }
  int cols() const noexcept { return cols_; }

  bool get(int i, int j) const noexcept { return rows_[i].test(static_cast<std::size_t>(j)); }
  void set(int i, int j, bool v = true) noexcept { rows_[i].assign(static_cast<std::size_t>(j), v); }
  const BitVector& row(int i) const noexcept { return rows_[i]; }
  BitVector& row(int i) noexcept { return rows_[i]; }

  BitMatrix transpose() const {
    BitMatrix t(cols_, rows());
    for (int i = 0; i < rows(); ++i) rows_[i].for_each([&](std::size_t j) { t.set(static_cast<int>(j), i); });
    return t;
  }

  /// this * x for a column vector x of width cols().
  BitVector apply(const BitVector& x) const {
    if (static_cast<int>(x.size()) != cols_) throw InputError("matrix-vector width mismatch");
    BitVector y(static_cast<std::size_t>(rows()));
    for (int i = 0; i < rows(); ++i)
      if (rows_[i].dot(x)) y.set(static_cast<std::size_t>(i));
    return y;
  }

  friend BitMatrix operator*(const BitMatrix& a, const BitMatrix& b) {
    if (a.cols() != b.rows()) throw InputError("matrix product dimension mismatch");
    BitMatrix c(a.rows(), b.cols());
    for (int i = 0; i < a.rows(); ++i)
      a.rows_[i].for_each([&](std::size_t k) { c.rows_[i] ^= b.rows_[k]; });
    return c;
  }

  friend bool operator==(const BitMatrix&, const BitMatrix&) = default;

 private:
  int cols_ = 0;
  std::vector<BitVector> rows_;
};

/// Rank over F2 by row elimination.
inline int gf2_rank(const BitMatrix& m) {
  std::vector<BitVector> rows;
  rows.reserve(static_cast<std::size_t>(m.rows()));
  for (int i = 0; i < m.rows(); ++i) rows.push_back(m.row(i));
  int rank = 0;
  for (int col = 0; col < m.cols() && rank < static_cast<int>(rows.size()); ++col) {
    std::size_t piv = static_cast<std::size_t>(rank);
    while (piv < rows.size() && !rows[piv].test(static_cast<std::size_t>(col))) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[piv], rows[static_cast<std::size_t>(rank)]);
    for (std::size_t r = static_cast<std::size_t>(rank) + 1; r < rows.size(); ++r)
      if (rows[r].test(static_cast<std::size_t>(col))) rows[r] ^= rows[static_cast<std::size_t>(rank)];
    ++rank;
  }
  return rank;
}

/// Inverse of a square matrix, or nullopt when singular.
inline std::optional<BitMatrix> gf2_inverse(const BitMatrix& m) {
  if (m.rows() != m.cols()) throw InputError("inverse of a non-square matrix");
  const int n = m.rows();
  BitMatrix a = m;
  BitMatrix inv = BitMatrix::identity(n);
  for (int col = 0; col < n; ++col) {
    int piv = col;
    while (piv < n && !a.get(piv, col)) ++piv;
    if (piv == n) return std::nullopt;
    std::swap(a.row(piv), a.row(col));
    std::swap(inv.row(piv), inv.row(col));
    for (int r = 0; r < n; ++r) {
      if (r != col && a.get(r, col)) {
        a.row(r) ^= a.row(col);
        inv.row(r) ^= inv.row(col);
      }
    }
  }
  return inv;
}

/// Row-space basis drawn from the matrix's own rows (lowest index first) plus
/// the machinery to express any vector of the row space in that basis.
class RowBasis {
 public:
  explicit RowBasis(const BitMatrix& m) : cols_(m.cols()) {
    for (int i = 0; i < m.rows(); ++i) {
      BitVector reduced = m.row(i);
      BitVector mask(static_cast<std::size_t>(m.rows()));
      reduce(reduced, mask);
      if (reduced.none()) continue;
      // New basis element: original row i.
      const std::size_t id = basis_rows_.size();
      basis_rows_.push_back(i);
      mask.set(id);
      echelon_.push_back({reduced, std::move(mask), reduced.find_first()});
    }
    const std::size_t r = basis_rows_.size();
    for (auto& e : echelon_) {
      BitVector trimmed(r);
      e.combo.for_each([&](std::size_t j) { trimmed.set(j); });
      e.combo = std::move(trimmed);
    }
  }

  int rank() const noexcept { return static_cast<int>(basis_rows_.size()); }
  /// Original row indices that form the basis, ascending.
  const std::vector<int>& basis_rows() const noexcept { return basis_rows_; }

  /// Coefficients c (width rank) with x = sum_j c_j * basis_j, or nullopt if
  /// x is outside the row space.
  std::optional<BitVector> express(const BitVector& x) const {
    if (static_cast<int>(x.size()) != cols_) throw InputError("vector width does not match basis");
    BitVector reduced = x;
    BitVector mask(static_cast<std::size_t>(rank()));
    for (const auto& e : echelon_) {
      if (reduced.test(e.pivot)) {
        reduced ^= e.vec;
        mask ^= e.combo;
      }
    }
    if (reduced.any()) return std::nullopt;
    return mask;
  }

 private:
  struct Echelon {
    BitVector vec;
    BitVector combo;  // which basis rows XOR to vec
    std::size_t pivot;
  };

  // Construction only; combos are still sized to the matrix row count here.
  void reduce(BitVector& v, BitVector& mask) const {
    for (const auto& e : echelon_) {
      if (v.test(e.pivot)) {
        v ^= e.vec;
        mask ^= e.combo;
      }
    }
  }

  int cols_;
  std::vector<int> basis_rows_;
  std::vector<Echelon> echelon_;
};

/// True iff m has unit diagonal and zeros at every distinct non-adjacent pair.
inline bool represents(const BitMatrix& m, const Graph& g) {
  const int n = g.order();
  if (m.rows() != n || m.cols() != n) throw InputError("represents: matrix must be n x n for an n-vertex graph");
  for (int i = 0; i < n; ++i) {
    if (!m.get(i, i)) return false;
    BitVector off = m.row(i);
    off.reset(static_cast<std::size_t>(i));
    if (!off.is_subset_of(g.neighbors(i))) return false;
  }
  return true;
}

/// Certified upper bound on minrk2(g) from a representing matrix.
inline int minrank_upper_from_matrix(const BitMatrix& m, const Graph& g) {
  if (!represents(m, g)) throw InputError("matrix does not represent the graph");
  return gf2_rank(m);
}

/// Per-vertex pair (a1, a2) of vectors in F2^k.
struct BiRepresentation {
  int k = 0;
  std::vector<std::pair<BitVector, BitVector>> vectors;
};

inline bool check_bi_representation(const BiRepresentation& b, const Graph& g) {
  const int n = g.order();
  if (static_cast<int>(b.vectors.size()) != n) throw InputError("bi-representation does not cover every vertex");
  for (const auto& [a1, a2] : b.vectors)
    if (static_cast<int>(a1.size()) != b.k || static_cast<int>(a2.size()) != b.k)
      throw InputError("bi-representation vector has wrong width");
  for (int v = 0; v < n; ++v)
    if (!b.vectors[v].first.dot(b.vectors[v].second)) return false;
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      if (g.has_edge(u, v)) continue;
      if (b.vectors[u].first.dot(b.vectors[v].second) || b.vectors[v].first.dot(b.vectors[u].second)) return false;
    }
  }
  return true;
}

/// A[i][j] = <a_i^1, a_j^2>. Represents g whenever b is a bi-representation
/// of g, and has rank at most b.k since A = A1 * A2^T.
inline BitMatrix matrix_from_bi_representation(const BiRepresentation& b) {
  const int n = static_cast<int>(b.vectors.size());
  BitMatrix a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a.set(i, j, b.vectors[i].first.dot(b.vectors[j].second));
  return a;
}

// "r c" header then r lines of c '0'/'1' characters.
inline std::string save_bit_matrix(const BitMatrix& m) {
  std::ostringstream os;
  os << m.rows() << ' ' << m.cols() << '\n';
  for (int i = 0; i < m.rows(); ++i) os << m.row(i).to_string() << '\n';
  return os.str();
}

inline BitMatrix load_bit_matrix(std::string_view text) {
  auto lines = detail::content_lines(text);
  if (lines.empty()) throw ParseError("missing header line 'r c'", 0);
  auto header = detail::split_ws(lines[0].second);
  if (header.size() != 2) throw ParseError("header must be 'r c'", lines[0].first);
  long long r = detail::parse_int(header[0], lines[0].first);
  long long c = detail::parse_int(header[1], lines[0].first);
  if (r < 0 || c < 0 || r > kMaxVertices || c > kMaxVertices) throw ParseError("matrix dimension out of range", lines[0].first);
  if (static_cast<long long>(lines.size()) - 1 != r)
    throw ParseError("expected " + std::to_string(r) + " rows", lines.back().first);
  std::vector<BitVector> rows;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    auto tok = detail::split_ws(lines[i].second);
    if (tok.size() != 1 || static_cast<long long>(tok[0].size()) != c)
      throw ParseError("row must be a single bit string of length " + std::to_string(c), lines[i].first);
    try {
      rows.push_back(BitVector::from_string(tok[0]));
    } catch (const InputError& e) {
      throw ParseError(e.what(), lines[i].first);
    }
  }
  return BitMatrix::from_rows(std::move(rows), static_cast<int>(c));
}

}  // namespace idxcode

#endif  // IDXCODE_GF2_HPP
