#ifndef IDXCODE_ROUNDING_HPP
#define IDXCODE_ROUNDING_HPP

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "idxcode/errors.hpp"
#include "idxcode/graph.hpp"
#include "idxcode/random.hpp"
#include "idxcode/vector_coloring.hpp"

namespace idxcode {

inline constexpr double kMinrank3DegreeExponent = 0.7426;  // Delta threshold n^0.7426
inline constexpr double kMinrank3C = 0.03678;

// ---------------------------------------------------------------------------
// Standard normal upper tail.

inline double normal_tail(double s) { return 0.5 * std::erfc(s / std::numbers::sqrt2); }

/// s with normal_tail(s) = p, by bisection to 1e-12.
inline double inverse_normal_tail(double p) {
  if (!(p > 0.0 && p < 1.0)) throw InputError("inverse_normal_tail: p must be in (0, 1)");
  double lo = -40.0, hi = 40.0;
  while (hi - lo > 1e-12) {
    const double mid = 0.5 * (lo + hi);
    if (normal_tail(mid) > p)
      lo = mid;
    else
      hi = mid;
    if (mid == lo && mid == hi) break;
  }
  return 0.5 * (lo + hi);
}

/// Threshold with tail Delta^{-(1-sigma)/((1+sigma)(1+c))}; 0 once that tail reaches 1/2.
inline double kms_threshold(double max_degree, double sigma, double c) {
  if (max_degree < 1.0) throw InputError("kms_threshold: max degree must be >= 1");
  if (!(sigma > 0.0 && sigma < 1.0)) throw InputError("kms_threshold: sigma must be in (0, 1)");
  if (c < 0.0) throw InputError("kms_threshold: c must be >= 0");
  const double tail = std::pow(max_degree, -(1.0 - sigma) / ((1.0 + sigma) * (1.0 + c)));
  if (tail >= 0.5) return 0.0;
  return inverse_normal_tail(tail);
}

// ---------------------------------------------------------------------------
// Threshold rounding.

struct RoundingParams {
  std::vector<double> t_grid;  // ascending, >= 0
  int trials = 1;              // per threshold
  std::uint64_t seed = 0;

  void validate() const {
    if (t_grid.empty()) throw InputError("rounding: empty threshold grid");
    if (trials < 1) throw InputError("rounding: trials must be >= 1");
    for (std::size_t i = 0; i < t_grid.size(); ++i) {
      if (!(t_grid[i] >= 0.0)) throw InputError("rounding: thresholds must be >= 0");
      if (i && t_grid[i] <= t_grid[i - 1]) throw InputError("rounding: thresholds must be strictly ascending");
    }
  }
};

inline int default_trials(int n) { return n < 2 ? 1 : static_cast<int>(std::ceil(8.0 * std::log(static_cast<double>(n)))); }

/// {kms_threshold(Delta, sigma, c)} plus `grid_size` thresholds whose tails
/// run geometrically from 1/2 down to 1/n.
inline RoundingParams make_rounding_params(int n, int max_degree, double sigma, double c, std::uint64_t seed,
                                           int grid_size = 20, int trials = 0) {
  RoundingParams p;
  p.seed = seed;
  p.trials = trials > 0 ? trials : default_trials(n);
  sigma = std::clamp(sigma, 1e-9, 1.0 - 1e-9);
  p.t_grid.push_back(kms_threshold(std::max(1, max_degree), sigma, c));
  const double floor_tail = 1.0 / std::max(2, n);
  for (int j = 0; j < grid_size; ++j) {
    const double frac = grid_size > 1 ? static_cast<double>(j) / (grid_size - 1) : 0.0;
    const double tail = 0.5 * std::pow(2.0 * floor_tail, frac);
    p.t_grid.push_back(tail >= 0.5 ? 0.0 : inverse_normal_tail(tail));
  }
  std::sort(p.t_grid.begin(), p.t_grid.end());
  p.t_grid.erase(std::unique(p.t_grid.begin(), p.t_grid.end(),
                             [](double a, double b) { return std::abs(a - b) <= 1e-12; }),
                 p.t_grid.end());
  return p;
}

struct RoundingResult {
  VertexSet set;
  double t = 0.0;
  int trial = -1;
  std::string mode = "kms";
  int center = -1;  // augmented: vertex i of the shell W_i(b)
  double b = std::numeric_limits<double>::quiet_NaN();
};

/// Survivors of {i : <zeta, w_i> >= t} after deleting both endpoints of each
/// surviving edge, edges taken in ascending (i, j) order.
inline VertexSet eliminate_edges(const Graph& g, const VertexSet& chosen) {
  BitVector alive = chosen.bits();
  for (std::size_t i = alive.find_first(); i < alive.size(); i = alive.find_next(i + 1)) {
    const BitVector& nb = g.neighbors(static_cast<int>(i));
    std::size_t j = (nb & alive).find_next(i + 1);
    if (j < alive.size()) {
      alive.reset(i);
      alive.reset(j);
    }
  }
  VertexSet out(g.order());
  for (std::size_t i = alive.find_first(); i < alive.size(); i = alive.find_next(i + 1)) out.insert(static_cast<int>(i));
  return out;
}

/// Largest survivor set over all (t, trial); ties go to the smaller t, then
/// the earlier trial. Each (t index, trial) draws from its own stream.
inline RoundingResult kms_prime(const Graph& g, const Eigen::MatrixXd& vectors, const RoundingParams& params) {
  params.validate();
  const int n = g.order();
  if (vectors.rows() != n) throw InputError("kms_prime: vector count does not match the vertex count");
  const Eigen::Index d = vectors.cols();
  RoundingResult best;
  best.set = VertexSet(n);
  std::normal_distribution<double> gauss;
  Eigen::VectorXd zeta(d);
  for (std::size_t ti = 0; ti < params.t_grid.size(); ++ti) {
    const double t = params.t_grid[ti];
    for (int trial = 0; trial < params.trials; ++trial) {
      StreamRng rng = make_stream(params.seed, {ti, static_cast<std::uint64_t>(trial)});
      gauss.reset();
      for (Eigen::Index c = 0; c < d; ++c) zeta(c) = gauss(rng);
      const Eigen::VectorXd proj = vectors * zeta;
      VertexSet chosen(n);
      for (int i = 0; i < n; ++i)
        if (proj(i) >= t) chosen.insert(i);
      if (chosen.size() <= best.set.size() && best.trial >= 0) continue;
      VertexSet survivors = eliminate_edges(g, chosen);
      if (best.trial < 0 || survivors.size() > best.set.size()) {
        best.set = std::move(survivors);
        best.t = t;
        best.trial = trial;
      }
    }
  }
  return best;
}

// ---------------------------------------------------------------------------
// Analysis functions of the shell argument.

struct AnalysisPoint {
  double sigma = 0.0;
  double c = 0.0;
  double alpha_corr = 0.0;
  double mu = 0.0;
  double pi = 0.0;
  double rho = 0.0;
  double s = 0.0;
  double phi = 0.0;
};

inline AnalysisPoint analysis_functions(double sigma, double c, double alpha_corr) {
  if (!(sigma > 0.0 && sigma < 1.0)) throw InputError("analysis: sigma must be in (0, 1)");
  if (c < 0.0) throw InputError("analysis: c must be >= 0");
  const double alpha_max = c / (1.0 + c);
  if (alpha_corr < -1e-15 || alpha_corr > alpha_max + 1e-15) throw InputError("analysis: alpha outside [0, c/(1+c)]");
  AnalysisPoint a;
  a.sigma = sigma;
  a.c = c;
  a.alpha_corr = alpha_corr;
  const double s2 = sigma * sigma;
  a.mu = s2 + (1.0 - s2) * alpha_corr;
  a.pi = (1.0 - alpha_corr) * (1.0 + s2 + alpha_corr * (1.0 - s2));
  a.rho = 1.0 + sigma - sigma * alpha_corr - std::sqrt((1.0 - alpha_corr * alpha_corr) * c);
  a.s = (sigma + a.mu * a.mu) / (1.0 - a.mu * a.mu);
  a.phi = (1.0 - sigma) / ((1.0 + sigma) * (1.0 + c)) - (1.0 - a.s) / (1.0 + a.s);
  return a;
}

/// rho^2 / (pi (1 + c)) + phi.
inline double shell_condition_objective(const AnalysisPoint& a) { return a.rho * a.rho / (a.pi * (1.0 + a.c)) + a.phi; }

struct ShellConditionMinimum {
  double alpha_corr = 0.0;
  double value = 0.0;
};

/// Minimum of the objective over [0, c/(1+c)]: grid step 1e-4, then golden
/// section on the bracketing cells to 1e-8.
inline ShellConditionMinimum shell_condition_minimum(double sigma, double c) {
  const double hi = c / (1.0 + c);
  auto f = [&](double alpha) { return shell_condition_objective(analysis_functions(sigma, c, std::clamp(alpha, 0.0, hi))); };
  const int steps = static_cast<int>(std::ceil(hi / 1e-4));
  ShellConditionMinimum best{0.0, f(0.0)};
  int best_step = 0;
  for (int k = 1; k <= steps; ++k) {
    const double alpha = std::min(hi, k * 1e-4);
    const double v = f(alpha);
    if (v < best.value) {
      best = {alpha, v};
      best_step = k;
    }
  }
  double a = std::max(0.0, (best_step - 1) * 1e-4), b = std::min(hi, (best_step + 1) * 1e-4);
  const double ratio = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = b - ratio * (b - a), x2 = a + ratio * (b - a);
  double f1 = f(x1), f2 = f(x2);
  while (b - a > 1e-8) {
    if (f1 < f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - ratio * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + ratio * (b - a);
      f2 = f(x2);
    }
  }
  const double mid = 0.5 * (a + b);
  const double fm = f(mid);
  if (fm < best.value) best = {mid, fm};
  return best;
}

/// (min over alpha of the objective) - 1/delta.
inline double shell_condition_margin(double sigma, double c, double delta) {
  if (!(delta > 0.0 && delta < 1.0)) throw InputError("shell_condition_margin: delta must be in (0, 1)");
  return shell_condition_minimum(sigma, c).value - 1.0 / delta;
}

/// Largest c with a non-negative margin, by bisection to 1e-6.
inline double find_best_c(double sigma, double delta) {
  if (shell_condition_margin(sigma, 0.0, delta) < 0.0) throw InputError("find_best_c: margin is negative already at c = 0");
  double lo = 0.0, hi = 0.1;
  while (shell_condition_margin(sigma, hi, delta) >= 0.0) {
    lo = hi;
    hi *= 2.0;
    if (hi > 1e3) throw InputError("find_best_c: margin stays non-negative");
  }
  while (hi - lo > 1e-6) {
    const double mid = 0.5 * (lo + hi);
    if (shell_condition_margin(sigma, mid, delta) >= 0.0)
      lo = mid;
    else
      hi = mid;
  }
  return lo;
}

// ---------------------------------------------------------------------------
// Augmented rounding: plain KMS' plus KMS' on projected inner-product shells.

struct AugmentedKmsOptions {
  std::uint64_t seed = 0;
  double b_step = 0.05;      // quantile step of the shell thresholds
  double c = kMinrank3C;     // alpha range [0, c/(1+c)] used to place the shells
  int t_grid_size = 20;
  int trials = 0;            // 0: ceil(8 ln n)
  VectorColoringOptions sdp = [] {
    VectorColoringOptions o;
    o.restarts = 1;
    return o;
  }();
};

/// sigma = 1/(kappa - 1) clamped into (0, 1).
inline double sigma_from_kappa(double kappa) {
  if (!(kappa > 1.0)) return 1.0 - 1e-9;
  return std::clamp(1.0 / (kappa - 1.0), 1e-9, 1.0 - 1e-9);
}

/// Shell thresholds for center i: quantiles (step b_step) of the products
/// <w_i, w_j> < 1 lying within b_step of [mu(0), mu(c/(1+c))]; all quantiles
/// when none do.
inline std::vector<double> shell_thresholds(const std::vector<double>& row_products, double sigma, double c,
                                            double b_step) {
  std::vector<double> vals;
  for (double p : row_products)
    if (p < 1.0 - 1e-9) vals.push_back(p);
  if (vals.empty()) return {};
  std::sort(vals.begin(), vals.end());
  std::vector<double> quantiles;
  const int levels = std::max(1, static_cast<int>(std::round(1.0 / b_step)));
  for (int k = 0; k < levels; ++k) {
    const double level = k * b_step;
    quantiles.push_back(vals[static_cast<std::size_t>(std::floor(level * static_cast<double>(vals.size() - 1)))]);
  }
  quantiles.erase(std::unique(quantiles.begin(), quantiles.end()), quantiles.end());
  const double mu_lo = sigma * sigma;
  const double mu_hi = mu_lo + (1.0 - mu_lo) * c / (1.0 + c);
  std::vector<double> near;
  for (double q : quantiles)
    if (q >= mu_lo - b_step && q <= mu_hi + b_step) near.push_back(q);
  return near.empty() ? quantiles : near;
}

/// Augmented rounding with given strict vectors.
inline RoundingResult augmented_kms(const Graph& g, const VectorColoring& vc, const AugmentedKmsOptions& opt = {}) {
  const int n = g.order();
  if (g.edge_count() == 0) {
    RoundingResult r;
    r.set = VertexSet::all(n);
    r.mode = "trivial";
    return r;
  }
  const double sigma = sigma_from_kappa(vc.kappa);
  const RoundingParams base_params =
      make_rounding_params(n, g.max_degree(), sigma, 0.0, opt.seed, opt.t_grid_size, opt.trials);
  RoundingResult best = kms_prime(g, vc.vectors, base_params);
  best.mode = "kms";
  const Eigen::MatrixXd gram = vc.vectors * vc.vectors.transpose();
  std::vector<double> row(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) row[j] = j == i ? 1.0 : gram(i, j);
    const auto shells = shell_thresholds(row, sigma, opt.c, opt.b_step);
    for (std::size_t bi = 0; bi < shells.size(); ++bi) {
      const double b = shells[bi];
      std::vector<int> members;
      for (int j = 0; j < n; ++j)
        if (j != i && row[j] >= b && row[j] < 1.0 - 1e-9) members.push_back(j);
      if (static_cast<int>(members.size()) <= best.set.size()) continue;
      const auto sub = induced_subgraph(g, members);
      Eigen::MatrixXd z(static_cast<Eigen::Index>(members.size()), vc.vectors.cols());
      for (std::size_t a = 0; a < members.size(); ++a) {
        const int j = members[a];
        Eigen::RowVectorXd zj = vc.vectors.row(j) - row[j] * vc.vectors.row(i);
        z.row(static_cast<Eigen::Index>(a)) = zj / zj.norm();
      }
      double sub_sigma = 0.5;
      if (sub.graph.edge_count() > 0) {
        double top = -1.0;
        for (auto [u, v] : sub.graph.edges()) top = std::max(top, z.row(u).dot(z.row(v)));
        sub_sigma = std::clamp(-top, 1e-9, 1.0 - 1e-9);
      }
      const RoundingParams params =
          make_rounding_params(static_cast<int>(members.size()), std::max(1, sub.graph.max_degree()), sub_sigma, 0.0,
                               derive_seed(opt.seed, {0xa06, static_cast<std::uint64_t>(i), bi}), opt.t_grid_size,
                               opt.trials);
      RoundingResult r = kms_prime(sub.graph, z, params);
      if (r.set.size() > best.set.size()) {
        best.set = lift(sub, r.set, n);
        best.t = r.t;
        best.trial = r.trial;
        best.mode = "augmented";
        best.center = i;
        best.b = b;
      }
    }
  }
  if (!is_independent(g, best.set)) throw ContractViolation("augmented_kms produced a dependent set");
  return best;
}

/// Solves the strict vector coloring first.
inline RoundingResult augmented_kms(const Graph& g, const AugmentedKmsOptions& opt = {}) {
  if (g.edge_count() == 0) return augmented_kms(g, VectorColoring{}, opt);
  VectorColoringOptions sdp = opt.sdp;
  sdp.seed = derive_seed(opt.seed, {0x5d7});
  return augmented_kms(g, solve_vector_coloring(g, true, sdp), opt);
}

}  // namespace idxcode

#endif  // IDXCODE_ROUNDING_HPP
