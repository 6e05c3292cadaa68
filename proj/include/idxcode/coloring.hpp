#ifndef IDXCODE_COLORING_HPP
#define IDXCODE_COLORING_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <deque>
#include <string>
#include <vector>

#include "idxcode/errors.hpp"
#include "idxcode/gk.hpp"
#include "idxcode/graph.hpp"
#include "idxcode/random.hpp"
#include "idxcode/rounding.hpp"
#include "idxcode/vector_coloring.hpp"

namespace idxcode {

struct Coloring {
  std::vector<int> colors;
  int count = 0;

  std::vector<int> class_sizes() const {
    std::vector<int> sizes(static_cast<std::size_t>(count), 0);
    for (int c : colors) ++sizes[static_cast<std::size_t>(c)];
    return sizes;
  }
  VertexSet color_class(int c) const {
    VertexSet s(static_cast<int>(colors.size()));
    for (std::size_t v = 0; v < colors.size(); ++v)
      if (colors[v] == c) s.insert(static_cast<int>(v));
    return s;
  }
};

/// Proper coloring with ids 0..count-1, every id used.
inline bool is_valid_coloring(const Graph& g, const Coloring& c) {
  if (static_cast<int>(c.colors.size()) != g.order()) return false;
  std::vector<bool> used(static_cast<std::size_t>(std::max(c.count, 0)), false);
  for (int x : c.colors) {
    if (x < 0 || x >= c.count) return false;
    used[static_cast<std::size_t>(x)] = true;
  }
  if (std::find(used.begin(), used.end(), false) != used.end()) return false;
  for (auto [u, v] : g.edges())
    if (c.colors[u] == c.colors[v]) return false;
  return true;
}

class NotBipartiteError : public ContractViolation {
 public:
  NotBipartiteError(const std::string& what, std::vector<int> cycle)
      : ContractViolation(what), cycle_(std::move(cycle)) {}
  /// Vertices of an odd cycle in traversal order.
  const std::vector<int>& odd_cycle() const noexcept { return cycle_; }

 private:
  std::vector<int> cycle_;
};

/// BFS per component from the lowest unvisited vertex.
inline Coloring two_color(const Graph& g) {
  const int n = g.order();
  Coloring out;
  out.colors.assign(static_cast<std::size_t>(n), -1);
  std::vector<int> parent(static_cast<std::size_t>(n), -1);
  for (int root = 0; root < n; ++root) {
    if (out.colors[root] >= 0) continue;
    out.colors[root] = 0;
    std::deque<int> queue{root};
    while (!queue.empty()) {
      const int u = queue.front();
      queue.pop_front();
      for (int v : g.neighbors(u).indices()) {
        if (out.colors[v] < 0) {
          out.colors[v] = 1 - out.colors[u];
          parent[v] = u;
          queue.push_back(v);
        } else if (out.colors[v] == out.colors[u]) {
          std::vector<int> up, down;
          std::vector<bool> on_up(static_cast<std::size_t>(n), false);
          for (int x = u; x >= 0; x = parent[x]) {
            up.push_back(x);
            on_up[x] = true;
          }
          int meet = v;
          while (!on_up[meet]) {
            down.push_back(meet);
            meet = parent[meet];
          }
          std::vector<int> cycle;
          for (int x : up) {
            cycle.push_back(x);
            if (x == meet) break;
          }
          cycle.insert(cycle.end(), down.rbegin(), down.rend());
          const std::string what = "graph is not bipartite: odd cycle of length " + std::to_string(cycle.size());
          throw NotBipartiteError(what, std::move(cycle));
        }
      }
    }
  }
  const bool any_one = std::find(out.colors.begin(), out.colors.end(), 1) != out.colors.end();
  out.count = n == 0 ? 0 : (any_one ? 2 : 1);
  return out;
}

/// g(1) = g(2) = 1, g(k) = g(k-1) / (g(k-1) + 1 - 2/kappa(k)).
inline double g_exponent(int k) {
  if (k < 1) throw InputError("g_exponent: k must be >= 1");
  double value = 1.0;
  for (int j = 3; j <= k; ++j) value = value / (value + 1.0 - 2.0 / kappa(j));
  return value;
}

namespace detail {

inline VertexSet larger_class(const Graph& g, const char* caller) {
  Coloring c;
  try {
    c = two_color(g);
  } catch (const NotBipartiteError& e) {
    throw NotBipartiteError(std::string(caller) + ": minrank bound of the complement violated (" + e.what() + ")",
                            e.odd_cycle());
  }
  VertexSet zero = c.color_class(0), one = c.color_class(1);
  return one.size() > zero.size() ? one : zero;
}

inline VertexSet neighborhood_class(const Graph& g, int v, const char* caller) {
  const auto sub = induced_subgraph(g, VertexSet(g.neighbors(v)));
  return lift(sub, larger_class(sub.graph, caller), g.order());
}

}  // namespace detail

/// Rounding knobs shared by the pipeline entry points. trials = 0 means
/// default_trials(n).
struct RoundingKnobs {
  int trials = 0;
  int t_grid_size = 20;
  double b_step = 0.05;
};

/// Independent set of g assuming minrk2(complement g) <= k. The KMS branch
/// wins ties with the neighborhood recursion.
inline VertexSet minrank_basic(const Graph& g, int k, std::uint64_t seed, const RoundingKnobs& knobs = {}) {
  if (k < 1) throw InputError("minrank_basic: k must be >= 1");
  const int n = g.order();
  if (g.edge_count() == 0) return VertexSet::all(n);
  if (k <= 2) return detail::larger_class(g, "minrank_basic");

  VectorColoringOptions vopt;
  vopt.restarts = 1;
  vopt.seed = derive_seed(seed, {0xba5e, static_cast<std::uint64_t>(k)});
  const VectorColoring vc = solve_vector_coloring(g, false, vopt);
  const double sigma = 1.0 / (kappa(k) - 1.0);
  const RoundingParams params =
      make_rounding_params(n, g.max_degree(), sigma, 0.0, derive_seed(seed, {0x4b35, static_cast<std::uint64_t>(k)}),
                           knobs.t_grid_size, knobs.trials);
  VertexSet kms = kms_prime(g, vc.vectors, params).set;

  const int v = max_degree_vertex(g);
  const auto sub = induced_subgraph(g, VertexSet(g.neighbors(v)));
  VertexSet nested = lift(sub, minrank_basic(sub.graph, k - 1, derive_seed(seed, {0x2ec, static_cast<std::uint64_t>(v)}), knobs), n);
  return nested.size() > kms.size() ? nested : kms;
}

/// Independent set of g assuming minrk2(complement g) <= 3.
inline VertexSet independent_set_minrank3(const Graph& g, std::uint64_t seed, const RoundingKnobs& knobs = {}) {
  const int n = g.order();
  if (g.edge_count() == 0) return VertexSet::all(n);
  const int v = max_degree_vertex(g);
  if (static_cast<double>(g.degree(v)) >= std::pow(static_cast<double>(n), kMinrank3DegreeExponent))
    return detail::neighborhood_class(g, v, "independent_set_minrank3");
  AugmentedKmsOptions opt;
  opt.seed = seed;
  opt.trials = knobs.trials;
  opt.t_grid_size = knobs.t_grid_size;
  opt.b_step = knobs.b_step;
  return augmented_kms(g, opt).set;
}

enum class ColoringMode { basic, minrank3 };

inline std::string to_string(ColoringMode m) { return m == ColoringMode::basic ? "basic" : "minrank3"; }

inline ColoringMode parse_coloring_mode(const std::string& s) {
  if (s == "basic") return ColoringMode::basic;
  if (s == "minrank3") return ColoringMode::minrank3;
  throw InputError("unknown coloring mode '" + s + "'");
}

/// Colors g by repeatedly extracting an independent set from the residual
/// graph. Vector colorings are solved afresh on each residual graph.
inline Coloring color_graph(const Graph& g, int k, std::uint64_t seed, ColoringMode mode,
                            const RoundingKnobs& knobs = {}) {
  if (k < 1) throw InputError("color_graph: k must be >= 1");
  if (mode == ColoringMode::minrank3 && k > 3) throw InputError("color_graph: minrank3 mode needs k <= 3");
  const int n = g.order();
  Coloring out;
  out.colors.assign(static_cast<std::size_t>(n), -1);
  std::vector<int> residual(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) residual[v] = v;
  while (!residual.empty()) {
    const auto sub = induced_subgraph(g, residual);
    const std::uint64_t round_seed = derive_seed(seed, {0xc010, static_cast<std::uint64_t>(out.count)});
    VertexSet local = mode == ColoringMode::minrank3 ? independent_set_minrank3(sub.graph, round_seed, knobs)
                                                      : minrank_basic(sub.graph, k, round_seed, knobs);
    if (local.empty()) local.insert(0);
    if (!is_independent(sub.graph, local)) throw ContractViolation("color_graph: extracted set is not independent");
    local.bits().for_each([&](std::size_t a) { out.colors[sub.vertices[a]] = out.count; });
    ++out.count;
    std::vector<int> rest;
    for (int v : residual)
      if (out.colors[v] < 0) rest.push_back(v);
    residual = std::move(rest);
  }
  return out;
}

inline Coloring color_graph(const Graph& g, int k, std::uint64_t seed) {
  return color_graph(g, k, seed, k == 3 ? ColoringMode::minrank3 : ColoringMode::basic);
}

}  // namespace idxcode

#endif  // IDXCODE_COLORING_HPP
