#ifndef IDXCODE_VECTOR_COLORING_HPP
#define IDXCODE_VECTOR_COLORING_HPP

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <utility>
#include <vector>

#include "idxcode/errors.hpp"
#include "idxcode/gk.hpp"
#include "idxcode/graph.hpp"
#include "idxcode/random.hpp"
#include "idxcode/spectral.hpp"

namespace idxcode {

/// Target edge inner product for a vector kappa-coloring.
inline double edge_product_target(double kappa) { return -1.0 / (kappa - 1.0); }

struct VectorColoringResiduals {
  double max_norm_deviation = 0.0;  // max | ||w_i|| - 1 |
  double max_edge_violation = 0.0;  // non-strict: max(0, <w_i,w_j> - m); strict: max |<w_i,w_j> - m|
  std::pair<int, int> worst_edge{-1, -1};

  bool valid(double tol) const { return max_norm_deviation <= tol && max_edge_violation <= tol; }
};

struct VectorColoring {
  Eigen::MatrixXd vectors;  // row i is w_i
  double kappa = 1.0;
  bool strict = false;
  VectorColoringResiduals residuals;

  int order() const noexcept { return static_cast<int>(vectors.rows()); }
  int dimension() const noexcept { return static_cast<int>(vectors.cols()); }
};

inline VectorColoringResiduals check_vector_coloring(const Graph& g, const Eigen::MatrixXd& vectors, double kappa,
                                                     bool strict) {
  if (vectors.rows() != g.order()) throw InputError("vector count does not match the vertex count");
  VectorColoringResiduals r;
  for (Eigen::Index i = 0; i < vectors.rows(); ++i)
    r.max_norm_deviation = std::max(r.max_norm_deviation, std::abs(vectors.row(i).norm() - 1.0));
  const double inf = std::numeric_limits<double>::infinity();
  const double m = kappa > 1.0 ? edge_product_target(kappa) : -inf;
  for (auto [u, v] : g.edges()) {
    const double p = vectors.row(u).dot(vectors.row(v));
    const double viol = kappa <= 1.0 ? inf : (strict ? std::abs(p - m) : std::max(0.0, p - m));
    if (r.worst_edge.first < 0 || viol > r.max_edge_violation) {
      r.max_edge_violation = viol;
      r.worst_edge = {u, v};
    }
  }
  return r;
}

inline VectorColoringResiduals check_vector_coloring(const Graph& g, const VectorColoring& vc) {
  return check_vector_coloring(g, vc.vectors, vc.kappa, vc.strict);
}

/// Kappa realized by the vectors: from the largest edge product (non-strict)
/// or the mean edge product (strict).
inline double realized_kappa(const Graph& g, const Eigen::MatrixXd& vectors, bool strict) {
  auto edges = g.edges();
  if (edges.empty()) return 1.0;
  double agg = strict ? 0.0 : -std::numeric_limits<double>::infinity();
  for (auto [u, v] : edges) {
    const double p = vectors.row(u).dot(vectors.row(v));
    agg = strict ? agg + p : std::max(agg, p);
  }
  if (strict) agg /= static_cast<double>(edges.size());
  if (agg >= 0.0) throw SolverError("kappa unbounded below 2: achieved edge inner product is not negative");
  return 1.0 - 1.0 / agg;
}

struct VectorColoringOptions {
  double tol = 1e-4;          // target accuracy on kappa
  double feasibility = 1e-6;  // strict: accepted spread of edge products
  int rank = 30;
  int restarts = 5;
  std::uint64_t seed = 0;
  int stage_iterations = 500;  // cap per continuation stage
  int stall_window = 200;
  long long iteration_budget = 5000;  // per restart and phase
};

namespace detail {

/// Unit vectors (row-major n x d) and smooth objectives of the edge inner
/// products, minimized by projected gradient on the product of spheres with
/// Barzilai-Borwein steps and Armijo halving.
class SphereSolver {
 public:
  enum class Kind {
    soft_max,       // (1/beta) log sum_e exp(beta p_e)
    mean_variance,  // mean(p) + rho * mean((p - mean)^2)
  };

  SphereSolver(int n, int d, std::vector<std::pair<int, int>> edges) : n_(n), d_(d), edges_(std::move(edges)) {}

  std::vector<double> random_start(Rng& rng) const {
    std::normal_distribution<double> gauss;
    std::vector<double> w(static_cast<std::size_t>(n_) * d_);
    for (auto& x : w) x = gauss(rng);
    normalize_rows(w);
    return w;
  }

  void products(const std::vector<double>& w, std::vector<double>& p) const {
    p.resize(edges_.size());
    for (std::size_t e = 0; e < edges_.size(); ++e) {
      const double* wu = &w[static_cast<std::size_t>(edges_[e].first) * d_];
      const double* wv = &w[static_cast<std::size_t>(edges_[e].second) * d_];
      double s = 0.0;
      for (int c = 0; c < d_; ++c) s += wu[c] * wv[c];
      p[e] = s;
    }
  }

  /// Objective value and its Riemannian gradient.
  double evaluate(const std::vector<double>& w, Kind kind, double param, std::vector<double>& grad) const {
    products(w, p_);
    coeff_.resize(edges_.size());
    const double count = static_cast<double>(edges_.size());
    double f = 0.0;
    if (kind == Kind::soft_max) {
      const double top = *std::max_element(p_.begin(), p_.end());
      double z = 0.0;
      for (std::size_t e = 0; e < p_.size(); ++e) z += (coeff_[e] = std::exp(param * (p_[e] - top)));
      for (auto& a : coeff_) a /= z;
      f = top + std::log(z) / param;
    } else {
      double mean = 0.0, var = 0.0;
      for (double x : p_) mean += x;
      mean /= count;
      for (double x : p_) var += (x - mean) * (x - mean);
      var /= count;
      for (std::size_t e = 0; e < p_.size(); ++e) coeff_[e] = (1.0 + 2.0 * param * (p_[e] - mean)) / count;
      f = mean + param * var;
    }
    grad.assign(w.size(), 0.0);
    for (std::size_t e = 0; e < edges_.size(); ++e) {
      const double a = coeff_[e];
      const std::size_t u = static_cast<std::size_t>(edges_[e].first) * d_, v = static_cast<std::size_t>(edges_[e].second) * d_;
      for (int c = 0; c < d_; ++c) {
        grad[u + c] += a * w[v + c];
        grad[v + c] += a * w[u + c];
      }
    }
    for (int i = 0; i < n_; ++i) {
      const double* wi = &w[static_cast<std::size_t>(i) * d_];
      double* gi = &grad[static_cast<std::size_t>(i) * d_];
      double radial = 0.0;
      for (int c = 0; c < d_; ++c) radial += gi[c] * wi[c];
      for (int c = 0; c < d_; ++c) gi[c] -= radial * wi[c];
    }
    return f;
  }

  /// One continuation stage. Stops on the iteration cap or when the
  /// objective improves by less than 1e-9 (relative) over a window.
  int minimize(std::vector<double>& w, Kind kind, double param, int max_iterations, int window) const {
    std::vector<double> g, g_new, w_new;
    double f = evaluate(w, kind, param, g);
    double eta = 0.1 / param;
    double f_window = f;
    int it = 0;
    while (it < max_iterations) {
      ++it;
      double gnorm2 = 0.0;
      for (double x : g) gnorm2 += x * x;
      if (gnorm2 < 1e-30) break;
      double f_new = 0.0;
      bool accepted = false;
      for (int halving = 0; halving < 50 && !accepted; ++halving) {
        w_new = w;
        for (std::size_t i = 0; i < w.size(); ++i) w_new[i] -= eta * g[i];
        normalize_rows(w_new);
        f_new = evaluate(w_new, kind, param, g_new);
        if (f_new <= f - 1e-4 * eta * gnorm2)
          accepted = true;
        else
          eta *= 0.5;
      }
      if (!accepted) break;
      double ss = 0.0, sy = 0.0;
      for (std::size_t i = 0; i < w.size(); ++i) {
        const double s = w_new[i] - w[i], y = g_new[i] - g[i];
        ss += s * s;
        sy += s * y;
      }
      eta = sy > 0.0 ? std::clamp(ss / sy, 1e-14, 1e6) : eta * 2.0;
      w.swap(w_new);
      g.swap(g_new);
      f = f_new;
      if (it % window == 0) {
        if (f_window - f < 1e-9 * std::max(1.0, std::abs(f_window))) break;
        f_window = f;
      }
    }
    return it;
  }

  double max_product(const std::vector<double>& w) const {
    products(w, p_);
    return *std::max_element(p_.begin(), p_.end());
  }

  /// Mean edge product and the largest deviation from it.
  std::pair<double, double> mean_spread(const std::vector<double>& w) const {
    products(w, p_);
    double mean = 0.0, spread = 0.0;
    for (double x : p_) mean += x;
    mean /= static_cast<double>(p_.size());
    for (double x : p_) spread = std::max(spread, std::abs(x - mean));
    return {mean, spread};
  }

  void normalize_rows(std::vector<double>& w) const {
    for (int i = 0; i < n_; ++i) {
      double* wi = &w[static_cast<std::size_t>(i) * d_];
      double norm = 0.0;
      for (int c = 0; c < d_; ++c) norm += wi[c] * wi[c];
      norm = std::sqrt(norm);
      if (norm == 0.0) {
        wi[0] = 1.0;
        continue;
      }
      for (int c = 0; c < d_; ++c) wi[c] /= norm;
    }
  }

  Eigen::MatrixXd to_matrix(const std::vector<double>& w) const {
    Eigen::MatrixXd out(n_, d_);
    for (int i = 0; i < n_; ++i)
      for (int c = 0; c < d_; ++c) out(i, c) = w[static_cast<std::size_t>(i) * d_ + c];
    return out;
  }

 private:
  int n_, d_;
  std::vector<std::pair<int, int>> edges_;
  mutable std::vector<double> p_, coeff_;
};

inline VectorColoring trivial_coloring(int n, bool strict) {
  VectorColoring vc;
  vc.vectors = Eigen::MatrixXd::Zero(n, 1);
  vc.vectors.col(0).setOnes();
  vc.kappa = 1.0;
  vc.strict = strict;
  return vc;
}

}  // namespace detail

/// Low-rank local search for the smallest kappa admitting a vector
/// kappa-coloring. Non-strict: minimize the largest edge inner product
/// through a soft maximum with increasing sharpness. Strict: continue from
/// there on mean + rho * variance of the edge products with increasing rho.
/// Edgeless graphs get kappa = 1.
inline VectorColoring solve_vector_coloring(const Graph& g, bool strict, const VectorColoringOptions& opt = {}) {
  using Kind = detail::SphereSolver::Kind;
  const int n = g.order();
  auto edges = g.edges();
  if (edges.empty()) return detail::trivial_coloring(n, strict);
  const int d = std::max(2, std::min(n, opt.rank));
  detail::SphereSolver solver(n, d, edges);
  // Soft-max error is at most log|E| / beta in the inner product.
  const double beta_max = std::max(1e3, 10.0 * std::log(static_cast<double>(edges.size()) + 1.0) / opt.tol);

  std::optional<std::vector<double>> best;
  double best_kappa = std::numeric_limits<double>::infinity();
  double best_spread = std::numeric_limits<double>::infinity();
  for (int r = 0; r < std::max(1, opt.restarts); ++r) {
    Rng rng = make_rng(opt.seed, {0x5d9, static_cast<std::uint64_t>(r)});
    std::vector<double> w = solver.random_start(rng);
    long long used = 0;
    double last = std::numeric_limits<double>::infinity();
    for (double beta = 10.0; used < opt.iteration_budget; beta *= 3.0) {
      used += solver.minimize(w, Kind::soft_max, beta, opt.stage_iterations, opt.stall_window);
      const double top = solver.max_product(w);
      if (beta >= beta_max && last - top < 1e-9) break;
      last = top;
    }
    double spread = 0.0;
    if (strict) {
      for (double rho = 10.0; rho <= 1e9 && used < 2 * opt.iteration_budget; rho *= 10.0) {
        used += solver.minimize(w, Kind::mean_variance, rho, opt.stage_iterations, opt.stall_window);
        if (rho >= 1e4 && solver.mean_spread(w).second <= opt.feasibility) break;
      }
      spread = solver.mean_spread(w).second;
    }
    const double k = realized_kappa(g, solver.to_matrix(w), strict);
    // Strict candidates with a visibly unequal spread lose to tighter ones.
    const bool tighter = strict && std::max(spread, 1e-4) < std::max(best_spread, 1e-4);
    const bool same_class = !strict || std::max(spread, 1e-4) == std::max(best_spread, 1e-4);
    if (tighter || (same_class && k < best_kappa)) {
      best_kappa = k;
      best_spread = spread;
      best = std::move(w);
    }
  }
  VectorColoring vc;
  vc.vectors = solver.to_matrix(*best);
  vc.kappa = best_kappa;
  vc.strict = strict;
  vc.residuals = check_vector_coloring(g, vc);
  return vc;
}

/// Averages the Gram matrix over the given automorphisms, M'(i,j) = mean over
/// f of M(f(i), f(j)), and factors it back into vectors.
inline VectorColoring symmetrize_gram(const VectorColoring& vc, const std::vector<Permutation>& automorphisms,
                                      const Graph& g) {
  const int n = g.order();
  if (vc.order() != n) throw InputError("vector count does not match the vertex count");
  if (automorphisms.empty()) throw InputError("automorphism list is empty");
  for (const auto& p : automorphisms)
    if (!is_automorphism(g, p)) throw InputError("permutation is not an automorphism of the graph");
  const Eigen::MatrixXd gram = vc.vectors * vc.vectors.transpose();
  Eigen::MatrixXd avg = Eigen::MatrixXd::Zero(n, n);
  for (const auto& p : automorphisms)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) avg(i, j) += gram(p[i], p[j]);
  avg /= static_cast<double>(automorphisms.size());
  avg = 0.5 * (avg + avg.transpose()).eval();
  auto eig = jacobi_eigen(SymmetricMatrix(avg));
  const double cutoff = 1e-10 * std::max(1.0, eig.values.cwiseAbs().maxCoeff());
  std::vector<Eigen::Index> keep;
  for (Eigen::Index i = 0; i < eig.values.size(); ++i)
    if (eig.values(i) > cutoff) keep.push_back(i);
  VectorColoring out;
  out.vectors = Eigen::MatrixXd::Zero(n, std::max<Eigen::Index>(1, static_cast<Eigen::Index>(keep.size())));
  for (std::size_t c = 0; c < keep.size(); ++c)
    out.vectors.col(static_cast<Eigen::Index>(c)) = eig.vectors.col(keep[c]) * std::sqrt(eig.values(keep[c]));
  for (int i = 0; i < n; ++i) {
    const double norm = out.vectors.row(i).norm();
    if (norm > 0.0) out.vectors.row(i) /= norm;
  }
  out.strict = vc.strict;
  out.kappa = realized_kappa(g, out.vectors, vc.strict);
  out.residuals = check_vector_coloring(g, out);
  return out;
}

// ---------------------------------------------------------------------------
// Homomorphism-style relaxation: a vector v_{x,i} per graph vertex x and G_k
// vertex i.

struct SdpAssignment {
  int gk_order = 0;
  int dimension = 0;
  std::vector<Eigen::MatrixXd> vectors;  // per x: gk_order x dimension, row i is v_{x,i}

  int order() const noexcept { return static_cast<int>(vectors.size()); }
};

/// v_{x,h(x)} = 1 in dimension one, everything else zero.
inline SdpAssignment integral_assignment(const std::vector<int>& homomorphism, int gk_order) {
  SdpAssignment a;
  a.gk_order = gk_order;
  a.dimension = 1;
  for (int h : homomorphism) {
    if (h < 0 || h >= gk_order) throw InputError("homomorphism image out of range");
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(gk_order, 1);
    m(h, 0) = 1.0;
    a.vectors.push_back(std::move(m));
  }
  return a;
}

/// Largest violation of the relaxation's constraints for graph g (whose
/// complement should map into gk_graph).
inline double sdp_assignment_residual(const SdpAssignment& a, const Graph& g, const Graph& gk_graph) {
  const int n = a.order();
  if (n != g.order() || gk_graph.order() != a.gk_order) throw InputError("assignment dimensions do not match");
  double worst = 0.0;
  std::vector<Eigen::VectorXd> mass(static_cast<std::size_t>(n));
  for (int x = 0; x < n; ++x) {
    if (a.vectors[x].rows() != a.gk_order || a.vectors[x].cols() != a.dimension)
      throw InputError("assignment block has the wrong shape");
    mass[x] = a.vectors[x].colwise().sum().transpose();
    const Eigen::MatrixXd self = a.vectors[x] * a.vectors[x].transpose();
    for (int i = 0; i < a.gk_order; ++i)
      for (int j = 0; j < a.gk_order; ++j)
        if (i != j) worst = std::max(worst, std::abs(self(i, j)));
  }
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      worst = std::max(worst, std::abs(mass[x].dot(mass[y]) - 1.0));
      if (x == y || g.has_edge(x, y)) continue;
      const Eigen::MatrixXd cross = a.vectors[x] * a.vectors[y].transpose();
      for (int i = 0; i < a.gk_order; ++i)
        for (int j = 0; j < a.gk_order; ++j)
          if (i == j || !gk_graph.has_edge(i, j)) worst = std::max(worst, std::abs(cross(i, j)));
    }
  return worst;
}

/// w_x = sum_i v_{x,i} (x) u_i, stored as the flattened D x d matrix
/// V_x^T U. The result is meant to be checked against complement(g) at
/// kappa = u.kappa.
inline VectorColoring combine_through_assignment(const SdpAssignment& a, const Graph& g, const Graph& gk_graph,
                                      const VectorColoring& u, double tol = 1e-6) {
  if (u.order() != a.gk_order) throw InputError("coloring of G_k has the wrong vertex count");
  if (!u.strict) throw InputError("combiner needs a strict vector coloring of G_k");
  const double residual = sdp_assignment_residual(a, g, gk_graph);
  if (residual > tol) throw InputError("assignment violates the relaxation constraints (residual " + std::to_string(residual) + ")");
  const int dim = a.dimension * u.dimension();
  VectorColoring out;
  out.vectors.resize(a.order(), dim);
  for (int x = 0; x < a.order(); ++x) {
    const Eigen::MatrixXd t = a.vectors[x].transpose() * u.vectors;  // D x d
    for (int p = 0; p < a.dimension; ++p)
      for (int q = 0; q < u.dimension(); ++q) out.vectors(x, p * u.dimension() + q) = t(p, q);
  }
  out.kappa = u.kappa;
  out.strict = false;
  out.residuals = check_vector_coloring(complement(g), out);
  return out;
}

}  // namespace idxcode

#endif  // IDXCODE_VECTOR_COLORING_HPP
