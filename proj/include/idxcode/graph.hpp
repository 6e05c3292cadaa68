#ifndef IDXCODE_GRAPH_HPP
#define IDXCODE_GRAPH_HPP

#include <algorithm>
#include <charconv>
#include <cstddef>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "idxcode/bits.hpp"
#include "idxcode/errors.hpp"

namespace idxcode {

/// Largest vertex count a Graph accepts. Big enough to materialize G_8.
inline constexpr int kMaxVertices = 1 << 15;

/// A set of vertices of an n-vertex graph, stored as a width-n bit set.
class VertexSet {
 public:
  VertexSet() = default;
  explicit VertexSet(int n) : bits_(static_cast<std::size_t>(n)) {}
  explicit VertexSet(BitVector bits) : bits_(std::move(bits)) {}

  static VertexSet from_indices(int n, const std::vector<int>& members) {
    VertexSet s(n);
    for (int v : members) {
      if (v < 0 || v >= n) throw InputError("vertex " + std::to_string(v) + " out of range [0, " + std::to_string(n) + ")");
      s.insert(v);
    }
    return s;
  }
  static VertexSet all(int n) {
    VertexSet s(n);
    s.bits_.set_all();
    return s;
  }

  int universe() const noexcept { return static_cast<int>(bits_.size()); }
  int size() const noexcept { return static_cast<int>(bits_.count()); }
  bool empty() const noexcept { return bits_.none(); }
  bool contains(int v) const noexcept { return bits_.test(static_cast<std::size_t>(v)); }
  void insert(int v) noexcept { bits_.set(static_cast<std::size_t>(v)); }
  void erase(int v) noexcept { bits_.reset(static_cast<std::size_t>(v)); }
  std::vector<int> members() const { return bits_.indices(); }

  const BitVector& bits() const noexcept { return bits_; }
  BitVector& bits() noexcept { return bits_; }

  friend bool operator==(const VertexSet&, const VertexSet&) = default;

 private:
  BitVector bits_;
};

/// Undirected simple graph on vertices 0..n-1 with one adjacency bit set per
/// vertex. Rows stay symmetric and loop-free through the mutating API.
class Graph {
 public:
  Graph() = default;
  explicit Graph(int n) {
    if (n < 0 || n > kMaxVertices)
      throw InputError("vertex count " + std::to_string(n) + " outside [0, " + std::to_string(kMaxVertices) + "]");
    rows_.assign(static_cast<std::size_t>(n), BitVector(static_cast<std::size_t>(n)));
  }

  static Graph from_edges(int n, const std::vector<std::pair<int, int>>& edges) {
    Graph g(n);
    for (auto [u, v] : edges) g.add_edge(u, v);
    return g;
  }

  int order() const noexcept { return static_cast<int>(rows_.size()); }

  void add_edge(int u, int v) {
    check_pair(u, v);
    rows_[u].set(v);
    rows_[v].set(u);
  }
  void remove_edge(int u, int v) {
    check_pair(u, v);
    rows_[u].reset(v);
    rows_[v].reset(u);
  }
  bool has_edge(int u, int v) const noexcept { return rows_[u].test(static_cast<std::size_t>(v)); }

  const BitVector& neighbors(int v) const noexcept { return rows_[v]; }
  int degree(int v) const noexcept { return static_cast<int>(rows_[v].count()); }

  std::size_t edge_count() const noexcept {
    std::size_t twice = 0;
    for (const auto& r : rows_) twice += r.count();
    return twice / 2;
  }

  int max_degree() const noexcept {
    int best = 0;
    for (int v = 0; v < order(); ++v) best = std::max(best, degree(v));
    return best;
  }

  /// Edges as (u, v) with u < v, lexicographically sorted.
  std::vector<std::pair<int, int>> edges() const {
    std::vector<std::pair<int, int>> out;
    for (int u = 0; u < order(); ++u) {
      rows_[u].for_each([&](std::size_t v) {
        if (static_cast<int>(v) > u) out.emplace_back(u, static_cast<int>(v));
      });
    }
    return out;
  }

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  void check_pair(int u, int v) const {
    if (u < 0 || v < 0 || u >= order() || v >= order())
      throw InputError("edge {" + std::to_string(u) + ", " + std::to_string(v) + "} out of range");
    if (u == v) throw InputError("self-loop at vertex " + std::to_string(u));
  }

  std::vector<BitVector> rows_;
};

inline Graph complement(const Graph& g) {
  const int n = g.order();
  Graph h(n);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (!g.has_edge(u, v)) h.add_edge(u, v);
  return h;
}

/// Induced subgraph plus `vertices[i]` = original id of new vertex i.
struct InducedSubgraph {
  Graph graph;
  std::vector<int> vertices;
};

inline InducedSubgraph induced_subgraph(const Graph& g, const VertexSet& s) {
  if (s.universe() != g.order()) throw InputError("vertex set universe does not match graph order");
  InducedSubgraph out{Graph(s.size()), s.members()};
  const auto& vs = out.vertices;
  for (std::size_t a = 0; a < vs.size(); ++a)
    for (std::size_t b = a + 1; b < vs.size(); ++b)
      if (g.has_edge(vs[a], vs[b])) out.graph.add_edge(static_cast<int>(a), static_cast<int>(b));
  return out;
}

inline InducedSubgraph induced_subgraph(const Graph& g, const std::vector<int>& members) {
  return induced_subgraph(g, VertexSet::from_indices(g.order(), members));
}

/// Lowest-index vertex among those of maximum degree.
inline int max_degree_vertex(const Graph& g) {
  if (g.order() == 0) throw InputError("max_degree_vertex: empty graph");
  int best = 0;
  for (int v = 1; v < g.order(); ++v)
    if (g.degree(v) > g.degree(best)) best = v;
  return best;
}

inline bool is_independent(const Graph& g, const VertexSet& s) {
  bool ok = true;
  s.bits().for_each([&](std::size_t v) {
    if (ok && g.neighbors(static_cast<int>(v)).intersection_count(s.bits()) != 0) ok = false;
  });
  return ok;
}

/// Maps a vertex set of an induced subgraph back to the parent graph.
inline VertexSet lift(const InducedSubgraph& sub, const VertexSet& local, int parent_order) {
  VertexSet out(parent_order);
  local.bits().for_each([&](std::size_t v) { out.insert(sub.vertices[v]); });
  return out;
}

// ---------------------------------------------------------------------------
// Edge-list text format:
//   n m
//   u v      (m lines, 0 <= u, v < n, u != v)
// Lines starting with '#' and blank lines are ignored.

struct EdgeListLoad {
  Graph graph;
  int duplicate_edges = 0;  // collapsed repeats; nonzero means the input was not canonical
};

namespace detail {

inline std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

inline long long parse_int(std::string_view tok, int line_no) {
  long long v = 0;
  auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || p != tok.data() + tok.size())
    throw ParseError("expected an integer, got '" + std::string(tok) + "'", line_no);
  return v;
}

/// Splits text into (1-based line number, content) pairs, skipping blank
/// and '#' lines.
inline std::vector<std::pair<int, std::string_view>> content_lines(std::string_view text) {
  std::vector<std::pair<int, std::string_view>> out;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    ++line_no;
    std::string_view line = text.substr(pos, end - pos);
    auto first = line.find_first_not_of(" \t\r");
    if (first != std::string_view::npos && line[first] != '#') out.emplace_back(line_no, line);
    if (end == text.size()) break;
    pos = end + 1;
  }
  return out;
}

}  // namespace detail

inline EdgeListLoad load_edge_list(std::string_view text) {
  auto lines = detail::content_lines(text);
  if (lines.empty()) throw ParseError("missing header line 'n m'", 0);
  auto header = detail::split_ws(lines[0].second);
  if (header.size() != 2) throw ParseError("header must be 'n m'", lines[0].first);
  long long n = detail::parse_int(header[0], lines[0].first);
  long long m = detail::parse_int(header[1], lines[0].first);
  if (n < 0 || n > kMaxVertices) throw ParseError("vertex count out of range", lines[0].first);
  if (m < 0) throw ParseError("negative edge count", lines[0].first);
  if (static_cast<long long>(lines.size()) - 1 != m)
    throw ParseError("header announces " + std::to_string(m) + " edges, found " + std::to_string(lines.size() - 1),
                     lines.back().first);

  EdgeListLoad out{Graph(static_cast<int>(n)), 0};
  for (std::size_t i = 1; i < lines.size(); ++i) {
    auto [line_no, line] = lines[i];
    auto tok = detail::split_ws(line);
    if (tok.size() != 2) throw ParseError("edge line must be 'u v'", line_no);
    long long u = detail::parse_int(tok[0], line_no);
    long long v = detail::parse_int(tok[1], line_no);
    if (u < 0 || u >= n || v < 0 || v >= n)
      throw ParseError("vertex index out of range [0, " + std::to_string(n) + ")", line_no);
    if (u == v) throw ParseError("self-loop at vertex " + std::to_string(u), line_no);
    if (out.graph.has_edge(static_cast<int>(u), static_cast<int>(v))) {
      ++out.duplicate_edges;
      continue;
    }
    out.graph.add_edge(static_cast<int>(u), static_cast<int>(v));
  }
  return out;
}

inline std::string save_edge_list(const Graph& g) {
  std::ostringstream os;
  auto es = g.edges();
  os << g.order() << ' ' << es.size() << '\n';
  for (auto [u, v] : es) os << u << ' ' << v << '\n';
  return os.str();
}

}  // namespace idxcode

#endif  // IDXCODE_GRAPH_HPP
