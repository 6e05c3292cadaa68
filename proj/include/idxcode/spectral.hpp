#ifndef IDXCODE_SPECTRAL_HPP
#define IDXCODE_SPECTRAL_HPP

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "idxcode/errors.hpp"
#include "idxcode/graph.hpp"

namespace idxcode {

/// Dense real matrix that is exactly symmetric.
class SymmetricMatrix {
 public:
  SymmetricMatrix() = default;
  explicit SymmetricMatrix(Eigen::MatrixXd m) : m_(std::move(m)) {
    if (m_.rows() != m_.cols()) throw InputError("symmetric matrix must be square");
    for (Eigen::Index i = 0; i < m_.rows(); ++i)
      for (Eigen::Index j = i + 1; j < m_.cols(); ++j)
        if (m_(i, j) != m_(j, i)) throw InputError("matrix is not symmetric");
  }

  static SymmetricMatrix adjacency(const Graph& g) {
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(g.order(), g.order());
    for (auto [u, v] : g.edges()) a(u, v) = a(v, u) = 1.0;
    return SymmetricMatrix(std::move(a));
  }

  Eigen::Index order() const noexcept { return m_.rows(); }
  const Eigen::MatrixXd& matrix() const noexcept { return m_; }

 private:
  Eigen::MatrixXd m_;
};

struct EigenGroup {
  double value;
  int multiplicity;
};

struct Spectrum {
  std::vector<double> values;      // ascending, with repeats
  std::vector<EigenGroup> groups;  // distinct values (within grouping resolution)
};

struct EigenDecomposition {
  Eigen::VectorXd values;   // ascending
  Eigen::MatrixXd vectors;  // column i belongs to values(i)
  int sweeps = 0;
};

inline constexpr int kJacobiSweepCap = 100;

/// Cyclic Jacobi rotations until the off-diagonal Frobenius norm drops below
/// tol * ||m||_F. Throws SolverError after kJacobiSweepCap sweeps.
inline EigenDecomposition jacobi_eigen(const SymmetricMatrix& sym, double tol = 1e-12, bool want_vectors = true) {
  Eigen::MatrixXd a = sym.matrix();
  const Eigen::Index n = a.rows();
  Eigen::MatrixXd v;
  if (want_vectors) v = Eigen::MatrixXd::Identity(n, n);
  const double scale = a.norm();
  const double target = tol * std::max(scale, 1e-300);

  auto off_norm = [&] {
    double s = 0.0;
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = i + 1; j < n; ++j) s += 2.0 * a(i, j) * a(i, j);
    return std::sqrt(s);
  };

  int sweep = 0;
  while (off_norm() > target) {
    if (++sweep > kJacobiSweepCap) throw SolverError("Jacobi eigensolver did not converge");
    for (Eigen::Index p = 0; p < n - 1; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        // A <- J^T A J with J the (p, q) rotation.
        for (Eigen::Index k = 0; k < n; ++k) {
          const double akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          const double apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        a(p, q) = a(q, p) = 0.0;
        if (want_vectors) {
          for (Eigen::Index k = 0; k < n; ++k) {
            const double vkp = v(k, p), vkq = v(k, q);
            v(k, p) = c * vkp - s * vkq;
            v(k, q) = s * vkp + c * vkq;
          }
        }
      }
    }
  }

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) order[static_cast<std::size_t>(i)] = i;
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index x, Eigen::Index y) { return a(x, x) < a(y, y); });
  EigenDecomposition out;
  out.sweeps = sweep;
  out.values.resize(n);
  if (want_vectors) out.vectors.resize(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    out.values(i) = a(order[static_cast<std::size_t>(i)], order[static_cast<std::size_t>(i)]);
    if (want_vectors) out.vectors.col(i) = v.col(order[static_cast<std::size_t>(i)]);
  }
  return out;
}

/// Groups an ascending list: consecutive values closer than `resolution`
/// share a group; the group value is their mean.
inline std::vector<EigenGroup> group_values(const std::vector<double>& ascending, double resolution) {
  std::vector<EigenGroup> groups;
  double sum = 0.0;
  int count = 0;
  double last = 0.0;
  for (double x : ascending) {
    if (count > 0 && x - last > resolution) {
      groups.push_back({sum / count, count});
      sum = 0.0;
      count = 0;
    }
    sum += x;
    ++count;
    last = x;
  }
  if (count > 0) groups.push_back({sum / count, count});
  return groups;
}

/// Ascending eigenvalues, accurate to tol relative to ||m||, grouped at 10*tol.
inline Spectrum eigenvalues_sym(const SymmetricMatrix& m, double tol = 1e-12) {
  auto dec = jacobi_eigen(m, tol, false);
  Spectrum s;
  s.values.assign(dec.values.data(), dec.values.data() + dec.values.size());
  s.groups = group_values(s.values, 10.0 * tol * std::max(1.0, m.matrix().norm()));
  return s;
}

/// Class-averaged adjacency: entry (a, b) is the number of edges between
/// classes a and b over |a|; the diagonal counts internal edges twice.
struct PartitionQuotient {
  Eigen::MatrixXd matrix;
  std::vector<double> class_sizes;
};

/// `classes[v]` in 0..c-1; every class must be nonempty.
inline PartitionQuotient partition_quotient(const Graph& g, const std::vector<int>& classes) {
  if (static_cast<int>(classes.size()) != g.order()) throw InputError("partition does not cover the vertex set");
  int c = 0;
  for (int x : classes) {
    if (x < 0) throw InputError("negative class id");
    c = std::max(c, x + 1);
  }
  PartitionQuotient q{Eigen::MatrixXd::Zero(c, c), std::vector<double>(static_cast<std::size_t>(c), 0.0)};
  for (int x : classes) q.class_sizes[static_cast<std::size_t>(x)] += 1.0;
  for (int a = 0; a < c; ++a)
    if (q.class_sizes[static_cast<std::size_t>(a)] == 0.0) throw InputError("class " + std::to_string(a) + " is empty");
  for (auto [u, v] : g.edges()) {
    q.matrix(classes[u], classes[v]) += 1.0;
    q.matrix(classes[v], classes[u]) += 1.0;
  }
  for (int a = 0; a < c; ++a) q.matrix.row(a) /= q.class_sizes[static_cast<std::size_t>(a)];
  return q;
}

/// Eigenvalues of a class-averaged quotient via the similar symmetric matrix
/// D^{1/2} M D^{-1/2}, D = diag(class sizes).
inline Spectrum quotient_eigenvalues(const Eigen::MatrixXd& m, const std::vector<double>& sizes, double tol = 1e-12) {
  const Eigen::Index c = m.rows();
  Eigen::MatrixXd s(c, c);
  for (Eigen::Index a = 0; a < c; ++a)
    for (Eigen::Index b = 0; b < c; ++b)
      s(a, b) = std::sqrt(sizes[static_cast<std::size_t>(a)]) * m(a, b) / std::sqrt(sizes[static_cast<std::size_t>(b)]);
  // Exact symmetry for the constructor; rounding differs by an ulp at most.
  Eigen::MatrixXd sym = 0.5 * (s + s.transpose());
  return eigenvalues_sym(SymmetricMatrix(std::move(sym)), tol);
}

struct QuotientSpectrumReport {
  PartitionQuotient quotient;
  Spectrum quotient_spectrum;
  Spectrum full_spectrum;
  bool contained = false;   // every quotient eigenvalue occurs in the full spectrum
  bool equal_sets = false;  // ... and every full eigenvalue occurs in the quotient
};

inline bool contains_value(const std::vector<EigenGroup>& groups, double x, double tol) {
  return std::any_of(groups.begin(), groups.end(), [&](const EigenGroup& g) { return std::abs(g.value - x) <= tol; });
}

inline QuotientSpectrumReport quotient_spectrum_check(const Graph& g, const std::vector<int>& classes, double tol = 1e-9) {
  QuotientSpectrumReport r;
  r.quotient = partition_quotient(g, classes);
  r.quotient_spectrum = quotient_eigenvalues(r.quotient.matrix, r.quotient.class_sizes);
  r.full_spectrum = eigenvalues_sym(SymmetricMatrix::adjacency(g));
  r.contained = std::all_of(r.quotient_spectrum.groups.begin(), r.quotient_spectrum.groups.end(),
                            [&](const EigenGroup& e) { return contains_value(r.full_spectrum.groups, e.value, tol); });
  r.equal_sets = r.contained &&
                 std::all_of(r.full_spectrum.groups.begin(), r.full_spectrum.groups.end(), [&](const EigenGroup& e) {
                   return contains_value(r.quotient_spectrum.groups, e.value, tol);
                 });
  return r;
}

}  // namespace idxcode

#endif  // IDXCODE_SPECTRAL_HPP
