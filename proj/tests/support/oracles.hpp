// Independent reference computations used only by the tests: brute-force
// enumerations, greedy baselines and numeric quadrature. Nothing here calls
// into the code paths these are used to check.
#ifndef IDXCODE_TESTS_ORACLES_HPP
#define IDXCODE_TESTS_ORACLES_HPP

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include "idxcode/graph.hpp"

namespace idxcode::testing {

inline Graph random_graph(int n, double p, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(p);
  Graph g(n);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (coin(rng)) g.add_edge(u, v);
  return g;
}

inline Graph cycle_graph(int n) {
  Graph g(n);
  for (int i = 0; i < n; ++i) g.add_edge(i, (i + 1) % n);
  return g;
}

inline Graph complete_graph(int n) {
  Graph g(n);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) g.add_edge(u, v);
  return g;
}

/// Rank over F2 of small square matrices given as row masks.
inline int small_rank(std::vector<std::uint32_t> rows) {
  int rank = 0;
  for (int bit = 0; bit < 32; ++bit) {
    auto it = std::find_if(rows.begin() + rank, rows.end(), [&](std::uint32_t r) { return (r >> bit) & 1U; });
    if (it == rows.end()) continue;
    std::iter_swap(rows.begin() + rank, it);
    for (std::size_t r = 0; r < rows.size(); ++r)
      if (static_cast<int>(r) != rank && ((rows[r] >> bit) & 1U)) rows[r] ^= rows[static_cast<std::size_t>(rank)];
    ++rank;
  }
  return rank;
}

/// minrk2(g) by enumerating every matrix with unit diagonal and zeros on
/// non-edges. Feasible for n <= 5 (at most 2^20 matrices).
inline int brute_force_minrank(const Graph& g) {
  const int n = g.order();
  std::vector<std::pair<int, int>> free_entries;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j && g.has_edge(i, j)) free_entries.emplace_back(i, j);
  int best = n;
  const std::uint64_t total = std::uint64_t{1} << free_entries.size();
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    std::vector<std::uint32_t> rows(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) rows[static_cast<std::size_t>(i)] = std::uint32_t{1} << i;
    for (std::size_t e = 0; e < free_entries.size(); ++e)
      if ((mask >> e) & 1U) rows[static_cast<std::size_t>(free_entries[e].first)] |= std::uint32_t{1} << free_entries[e].second;
    best = std::min(best, small_rank(rows));
  }
  return best;
}

/// Independence number by subset enumeration (n <= 20).
inline int brute_force_alpha(const Graph& g) {
  const int n = g.order();
  std::vector<std::uint32_t> adj(static_cast<std::size_t>(n), 0);
  for (auto [u, v] : g.edges()) {
    adj[static_cast<std::size_t>(u)] |= std::uint32_t{1} << v;
    adj[static_cast<std::size_t>(v)] |= std::uint32_t{1} << u;
  }
  int best = 0;
  for (std::uint32_t s = 0; s < (std::uint32_t{1} << n); ++s) {
    const int size = std::popcount(s);
    if (size <= best) continue;
    bool ok = true;
    for (std::uint32_t t = s; t && ok; t &= t - 1) ok = !(adj[static_cast<std::size_t>(std::countr_zero(t))] & s);
    if (ok) best = size;
  }
  return best;
}

/// Repeatedly take a minimum-degree vertex of the remaining graph (lowest
/// index on ties) and delete it with its neighbors.
inline std::vector<int> greedy_min_degree_independent_set(const Graph& g) {
  const int n = g.order();
  std::vector<char> alive(static_cast<std::size_t>(n), 1);
  std::vector<int> deg(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) deg[static_cast<std::size_t>(v)] = g.degree(v);
  std::vector<int> out;
  while (true) {
    int best = -1;
    for (int v = 0; v < n; ++v)
      if (alive[static_cast<std::size_t>(v)] && (best < 0 || deg[static_cast<std::size_t>(v)] < deg[static_cast<std::size_t>(best)])) best = v;
    if (best < 0) break;
    out.push_back(best);
    std::vector<int> removed{best};
    g.neighbors(best).for_each([&](std::size_t w) {
      if (alive[w]) removed.push_back(static_cast<int>(w));
    });
    for (int r : removed) alive[static_cast<std::size_t>(r)] = 0;
    for (int r : removed)
      g.neighbors(r).for_each([&](std::size_t w) {
        if (alive[w]) --deg[w];
      });
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// First-fit coloring in order of decreasing degree (Welsh-Powell). Returns
/// the number of colors.
inline int greedy_color_count(const Graph& g) {
  const int n = g.order();
  std::vector<int> order(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) order[static_cast<std::size_t>(v)] = v;
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return g.degree(a) > g.degree(b); });
  std::vector<int> color(static_cast<std::size_t>(n), -1);
  int used = 0;
  for (int v : order) {
    std::vector<char> taken(static_cast<std::size_t>(used) + 1, 0);
    g.neighbors(v).for_each([&](std::size_t w) {
      if (color[w] >= 0) taken[static_cast<std::size_t>(color[w])] = 1;
    });
    int c = 0;
    while (taken[static_cast<std::size_t>(c)]) ++c;
    color[static_cast<std::size_t>(v)] = c;
    used = std::max(used, c + 1);
  }
  return used;
}

/// Upper tail of the standard normal by composite Simpson quadrature of the
/// density over [s, s + 40].
inline double normal_tail_quadrature(double s, int intervals = 400000) {
  const double h = 40.0 / intervals;
  auto f = [](double t) { return std::exp(-0.5 * t * t) / std::sqrt(2.0 * std::numbers::pi); };
  double acc = f(s) + f(s + 40.0);
  for (int i = 1; i < intervals; ++i) acc += (i % 2 ? 4.0 : 2.0) * f(s + i * h);
  return acc * h / 3.0;
}

/// Inverse tail by bisection on the quadrature.
inline double inverse_normal_tail_quadrature(double p) {
  double lo = -10.0, hi = 10.0;
  for (int it = 0; it < 60; ++it) {
    const double mid = 0.5 * (lo + hi);
    (normal_tail_quadrature(mid, 20000) > p ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace idxcode::testing

#endif  // IDXCODE_TESTS_ORACLES_HPP
