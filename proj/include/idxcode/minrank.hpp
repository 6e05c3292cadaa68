#ifndef IDXCODE_MINRANK_HPP
#define IDXCODE_MINRANK_HPP

#include <algorithm>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "idxcode/bits.hpp"
#include "idxcode/errors.hpp"
#include "idxcode/gf2.hpp"
#include "idxcode/gk.hpp"
#include "idxcode/graph.hpp"
#include "idxcode/random.hpp"

namespace idxcode {

inline constexpr int kOracleMaxK = 5;
inline constexpr long long kDefaultNodeBudget = 100'000'000;

enum class MinrankStatus {
  exact,    // `value` is minrk2(g)
  exceeds,  // minrk2(g) > k_max
  unknown,  // node budget ran out before a verdict
};

struct MinrankResult {
  MinrankStatus status = MinrankStatus::unknown;
  int value = 0;                              // minrank when exact; k_max otherwise
  std::optional<BiRepresentation> witness;    // bi-representation in F2^value when exact
  std::vector<int> homomorphism;              // vertex -> G_value vertex id when exact
  long long nodes = 0;
};

inline std::string to_string(MinrankStatus s) {
  switch (s) {
    case MinrankStatus::exact: return "exact";
    case MinrankStatus::exceeds: return "exceeds";
    case MinrankStatus::unknown: return "unknown";
  }
  return "unknown";
}

namespace detail {

/// Backtracking search for a homomorphism h from `h_graph` into G_k: adjacent
/// vertices of h_graph must land on adjacent vertices of G_k. Forward
/// checking keeps a candidate bit set per unassigned vertex.
class HomomorphismSearch {
 public:
  HomomorphismSearch(const Graph& h_graph, const LabeledGkGraph& gk, long long budget)
      : h_(h_graph), gk_(gk), budget_(budget) {}

  /// true: found (see assignment()); false: none exists; nullopt: budget hit.
  std::optional<bool> run() {
    const int n = h_.order();
    assignment_.assign(static_cast<std::size_t>(n), -1);
    std::vector<char> done(static_cast<std::size_t>(n), 0);
    for (int start = 0; start < n; ++start) {
      if (done[static_cast<std::size_t>(start)]) continue;
      auto order = component_order(start);
      for (int v : order) done[static_cast<std::size_t>(v)] = 1;
      std::vector<BitVector> domains(static_cast<std::size_t>(n));
      BitVector full(static_cast<std::size_t>(gk_.order()));
      full.set_all();
      for (int v : order) domains[static_cast<std::size_t>(v)] = full;
      // Vertex transitivity: the first vertex can be (e_1, e_1). Arc
      // transitivity: a neighbor placed second can then be (e_2, e_2).
      const int e1 = gk_.id(1U, 1U);
      domains[static_cast<std::size_t>(order[0])] = single(e1);
      if (order.size() > 1 && h_.has_edge(order[0], order[1]) && gk_.k >= 2)
        domains[static_cast<std::size_t>(order[1])] = single(gk_.id(2U, 2U));
      auto r = search(order, 0, domains);
      if (!r.has_value()) return std::nullopt;
      if (!*r) return false;
    }
    return true;
  }

  const std::vector<int>& assignment() const noexcept { return assignment_; }
  long long nodes() const noexcept { return nodes_; }

 private:
  BitVector single(int id) const {
    BitVector b(static_cast<std::size_t>(gk_.order()));
    b.set(static_cast<std::size_t>(id));
    return b;
  }

  // Component of `start`, ordered so that every vertex after the first has
  // as many already-ordered neighbors as possible (ties: higher degree, then
  // lower index). The first vertex has maximum degree in the component.
  std::vector<int> component_order(int start) const {
    std::vector<int> comp;
    std::vector<char> in(static_cast<std::size_t>(h_.order()), 0);
    std::vector<int> stack{start};
    in[static_cast<std::size_t>(start)] = 1;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      comp.push_back(v);
      h_.neighbors(v).for_each([&](std::size_t w) {
        if (!in[w]) {
          in[w] = 1;
          stack.push_back(static_cast<int>(w));
        }
      });
    }
    std::sort(comp.begin(), comp.end());
    std::vector<int> order;
    std::vector<int> placed_nbrs(static_cast<std::size_t>(h_.order()), 0);
    std::vector<char> placed(static_cast<std::size_t>(h_.order()), 0);
    while (order.size() < comp.size()) {
      int best = -1;
      for (int v : comp) {
        if (placed[static_cast<std::size_t>(v)]) continue;
        if (best < 0) {
          best = v;
          continue;
        }
        auto key = [&](int x) { return std::pair(placed_nbrs[static_cast<std::size_t>(x)], h_.degree(x)); };
        if (key(v) > key(best)) best = v;
      }
      placed[static_cast<std::size_t>(best)] = 1;
      order.push_back(best);
      h_.neighbors(best).for_each([&](std::size_t w) { ++placed_nbrs[w]; });
    }
    return order;
  }

  std::optional<bool> search(const std::vector<int>& order, std::size_t depth, std::vector<BitVector>& domains) {
    if (depth == order.size()) return true;
    const int v = order[depth];
    const BitVector candidates = domains[static_cast<std::size_t>(v)];
    for (std::size_t c = candidates.find_first(); c < candidates.size(); c = candidates.find_next(c + 1)) {
      if (++nodes_ > budget_) return std::nullopt;
      assignment_[static_cast<std::size_t>(v)] = static_cast<int>(c);
      // Narrow the domains of unassigned neighbors.
      std::vector<std::pair<int, BitVector>> saved;
      bool wiped = false;
      for (std::size_t d = depth + 1; d < order.size(); ++d) {
        const int w = order[d];
        if (!h_.has_edge(v, w)) continue;
        saved.emplace_back(w, domains[static_cast<std::size_t>(w)]);
        domains[static_cast<std::size_t>(w)] &= gk_.graph.neighbors(static_cast<int>(c));
        if (domains[static_cast<std::size_t>(w)].none()) {
          wiped = true;
          break;
        }
      }
      if (!wiped) {
        auto r = search(order, depth + 1, domains);
        if (!r.has_value() || *r) {
          return r;
        }
      }
      for (auto& [w, dom] : saved) domains[static_cast<std::size_t>(w)] = std::move(dom);
      assignment_[static_cast<std::size_t>(v)] = -1;
    }
    return false;
  }

  const Graph& h_;
  const LabeledGkGraph& gk_;
  long long budget_;
  long long nodes_ = 0;
  std::vector<int> assignment_;
};

}  // namespace detail

/// Smallest k <= k_max such that g has an orthogonal bi-representation in
/// F2^k, found as a homomorphism from complement(g) into G_k.
inline MinrankResult minrank_oracle(const Graph& g, int k_max, long long node_budget = kDefaultNodeBudget) {
  if (k_max < 1 || k_max > kOracleMaxK) throw InputError("minrank_oracle: k_max must be in [1, 5]");
  MinrankResult res;
  if (g.order() == 0) {
    res.status = MinrankStatus::exact;
    res.value = 0;
    res.witness = BiRepresentation{0, {}};
    return res;
  }
  const Graph h = complement(g);
  long long remaining = node_budget;
  for (int k = 1; k <= k_max; ++k) {
    const LabeledGkGraph gk = build_gk(k);
    detail::HomomorphismSearch search(h, gk, remaining);
    auto found = search.run();
    res.nodes += search.nodes();
    remaining -= search.nodes();
    if (!found.has_value()) {
      res.status = MinrankStatus::unknown;
      res.value = k_max;
      return res;
    }
    if (*found) {
      res.status = MinrankStatus::exact;
      res.value = k;
      res.homomorphism = search.assignment();
      BiRepresentation b;
      b.k = k;
      for (int id : res.homomorphism) b.vectors.emplace_back(gk.v1_bits(id), gk.v2_bits(id));
      res.witness = std::move(b);
      return res;
    }
  }
  res.status = MinrankStatus::exceeds;
  res.value = k_max;
  return res;
}

// ---------------------------------------------------------------------------
// Instances with minrk2(complement G) <= k: G admits a homomorphism into G_k.

struct BoundedMinrankInstance {
  Graph graph;
  std::vector<int> labels;  // G_k vertex id per vertex; a homomorphism G -> G_k
};

/// Keeps each pair whose labels are adjacent in G_k with probability p.
inline BoundedMinrankInstance instance_from_labels(const LabeledGkGraph& gk, std::vector<int> labels, double p,
                                                   std::uint64_t seed) {
  if (p < 0.0 || p > 1.0) throw InputError("edge probability must be in [0, 1]");
  const int n = static_cast<int>(labels.size());
  for (int l : labels)
    if (l < 0 || l >= gk.order()) throw InputError("label is not a vertex of G_k");
  Rng rng = make_rng(seed, {0x6e6e});
  std::bernoulli_distribution keep(p);
  BoundedMinrankInstance inst{Graph(n), std::move(labels)};
  for (int x = 0; x < n; ++x)
    for (int y = x + 1; y < n; ++y)
      if (gk.graph.has_edge(inst.labels[x], inst.labels[y]) && keep(rng)) inst.graph.add_edge(x, y);
  return inst;
}

inline BoundedMinrankInstance generate_bounded_minrank_instance(int n, int k, double p, std::uint64_t seed) {
  if (k < 1) throw InputError("k must be >= 1");
  if (n < 0) throw InputError("n must be >= 0");
  const LabeledGkGraph gk = build_gk(k);
  Rng rng = make_rng(seed, {0x1abe1});
  std::uniform_int_distribution<int> pick(0, gk.order() - 1);
  std::vector<int> labels(static_cast<std::size_t>(n));
  for (auto& l : labels) l = pick(rng);
  return instance_from_labels(gk, std::move(labels), p, seed);
}

inline Graph gen_bounded_minrank_instance(int n, int k, double p, std::uint64_t seed) {
  return generate_bounded_minrank_instance(n, k, p, seed).graph;
}

}  // namespace idxcode

#endif  // IDXCODE_MINRANK_HPP
