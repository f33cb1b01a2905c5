#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <queue>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "genergy/error.hpp"

namespace genergy {

using Edge = std::pair<int, int>;

/// Simple undirected graph stored as one bitset row per vertex.
///
/// The adjacency rows are kept symmetric with an empty diagonal, so every
/// instance satisfies the simple-graph invariants by construction.
class Graph {
 public:
  Graph() = default;

  explicit Graph(int n) : n_(n), words_(words_for(n)), bits_(static_cast<std::size_t>(n) * words_for(n), 0) {
    if (n < 0) throw Error(ErrorKind::invalid_argument, "vertex count must be non-negative");
  }

  static Graph from_edges(int n, std::span<const Edge> edges) {
    Graph g(n);
    for (auto [u, v] : edges) g.add_edge(u, v);
    return g;
  }

  int n() const noexcept { return n_; }
  int m() const noexcept { return m_; }

  bool has_edge(int u, int v) const {
    check_vertex(u);
    check_vertex(v);
    return test(u, v);
  }

  /// Inserts {u, v}. Self-loops, duplicates and out-of-range endpoints throw.
  void add_edge(int u, int v) {
    check_vertex(u);
    check_vertex(v);
    if (u == v) throw Error(ErrorKind::invalid_argument, "self-loop at vertex " + std::to_string(u));
    if (test(u, v)) {
      throw Error(ErrorKind::invalid_argument,
                  "duplicate edge {" + std::to_string(u) + "," + std::to_string(v) + "}");
    }
    set(u, v);
    set(v, u);
    ++m_;
  }

  void remove_edge(int u, int v) {
    check_vertex(u);
    check_vertex(v);
    if (!test(u, v)) return;
    clear(u, v);
    clear(v, u);
    --m_;
  }

  int degree(int v) const {
    check_vertex(v);
    int d = 0;
    for (int w = 0; w < words_; ++w) d += std::popcount(row_word(v, w));
    return d;
  }

  std::vector<int> degrees() const {
    std::vector<int> out(static_cast<std::size_t>(n_));
    for (int v = 0; v < n_; ++v) out[static_cast<std::size_t>(v)] = degree(v);
    return out;
  }

  std::vector<int> neighbors(int v) const {
    check_vertex(v);
    std::vector<int> out;
    for (int u = 0; u < n_; ++u)
      if (test(v, u)) out.push_back(u);
    return out;
  }

  /// Edges as (u, v) with u < v, in lexicographic order.
  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    out.reserve(static_cast<std::size_t>(m_));
    for (int u = 0; u < n_; ++u)
      for (int v = u + 1; v < n_; ++v)
        if (test(u, v)) out.emplace_back(u, v);
    return out;
  }

  /// Row of vertex v as a single word; only valid for n <= 64.
  std::uint64_t row64(int v) const {
    if (n_ > 64) throw Error(ErrorKind::unsupported, "row64 requires n <= 64");
    return row_word(v, 0);
  }

  std::vector<std::uint64_t> rows64() const {
    std::vector<std::uint64_t> out(static_cast<std::size_t>(n_));
    for (int v = 0; v < n_; ++v) out[static_cast<std::size_t>(v)] = row64(v);
    return out;
  }

  static Graph from_rows64(std::span<const std::uint64_t> rows) {
    Graph g(static_cast<int>(rows.size()));
    for (int u = 0; u < g.n_; ++u)
      for (int v = u + 1; v < g.n_; ++v)
        if ((rows[static_cast<std::size_t>(u)] >> v) & 1U) g.add_edge(u, v);
    return g;
  }

  bool operator==(const Graph& other) const = default;

 private:
  static int words_for(int n) { return n <= 0 ? 0 : (n + 63) / 64; }

  void check_vertex(int v) const {
    if (v < 0 || v >= n_)
      throw Error(ErrorKind::invalid_argument,
                  "vertex " + std::to_string(v) + " out of range for n=" + std::to_string(n_));
  }

  std::uint64_t row_word(int v, int w) const {
    return bits_[static_cast<std::size_t>(v) * static_cast<std::size_t>(words_) + static_cast<std::size_t>(w)];
  }
  std::uint64_t& word(int u, int v) {
    return bits_[static_cast<std::size_t>(u) * static_cast<std::size_t>(words_) + static_cast<std::size_t>(v / 64)];
  }
  bool test(int u, int v) const { return (row_word(u, v / 64) >> (v % 64)) & 1U; }
  void set(int u, int v) { word(u, v) |= std::uint64_t{1} << (v % 64); }
  void clear(int u, int v) { word(u, v) &= ~(std::uint64_t{1} << (v % 64)); }

  int n_ = 0;
  int m_ = 0;
  int words_ = 0;
  std::vector<std::uint64_t> bits_;
};

// ---------------------------------------------------------------------------
// Combinatorial properties

inline bool is_connected(const Graph& g) {
  if (g.n() <= 1) return true;
  std::vector<char> seen(static_cast<std::size_t>(g.n()), 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  int count = 1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int u : g.neighbors(v)) {
      if (!seen[static_cast<std::size_t>(u)]) {
        seen[static_cast<std::size_t>(u)] = 1;
        ++count;
        stack.push_back(u);
      }
    }
  }
  return count == g.n();
}

inline int component_count(const Graph& g) {
  std::vector<char> seen(static_cast<std::size_t>(g.n()), 0);
  int components = 0;
  for (int s = 0; s < g.n(); ++s) {
    if (seen[static_cast<std::size_t>(s)]) continue;
    ++components;
    std::vector<int> stack{s};
    seen[static_cast<std::size_t>(s)] = 1;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (int u : g.neighbors(v))
        if (!seen[static_cast<std::size_t>(u)]) {
          seen[static_cast<std::size_t>(u)] = 1;
          stack.push_back(u);
        }
    }
  }
  return components;
}

/// Bipartiteness by BFS 2-colouring.
inline bool is_bipartite(const Graph& g) {
  std::vector<int> colour(static_cast<std::size_t>(g.n()), -1);
  for (int s = 0; s < g.n(); ++s) {
    if (colour[static_cast<std::size_t>(s)] >= 0) continue;
    colour[static_cast<std::size_t>(s)] = 0;
    std::queue<int> queue;
    queue.push(s);
    while (!queue.empty()) {
      int v = queue.front();
      queue.pop();
      for (int u : g.neighbors(v)) {
        auto& cu = colour[static_cast<std::size_t>(u)];
        if (cu < 0) {
          cu = 1 - colour[static_cast<std::size_t>(v)];
          queue.push(u);
        } else if (cu == colour[static_cast<std::size_t>(v)]) {
          return false;
        }
      }
    }
  }
  return true;
}

inline bool is_forest(const Graph& g) { return g.m() == g.n() - component_count(g); }

inline bool is_tree(const Graph& g) { return g.n() >= 1 && g.m() == g.n() - 1 && is_connected(g); }

/// Number of triangles, counted combinatorially.
inline long long triangle_count(const Graph& g) {
  long long t = 0;
  for (auto [u, v] : g.edges())
    for (int w = v + 1; w < g.n(); ++w)
      if (g.has_edge(u, w) && g.has_edge(v, w)) ++t;
  return t;
}

// ---------------------------------------------------------------------------
// Named constructions

namespace make {

inline Graph empty(int n) { return Graph(n); }

inline Graph complete(int n) {
  if (n < 1) throw Error(ErrorKind::invalid_argument, "complete graph needs n >= 1");
  Graph g(n);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) g.add_edge(u, v);
  return g;
}

inline Graph complete_bipartite(int a, int b) {
  if (a < 1 || b < 1) throw Error(ErrorKind::invalid_argument, "complete bipartite parts must be >= 1");
  Graph g(a + b);
  for (int u = 0; u < a; ++u)
    for (int v = 0; v < b; ++v) g.add_edge(u, a + v);
  return g;
}

/// K_{1,k}; vertex 0 is the centre.
inline Graph star(int k) { return complete_bipartite(1, k); }

inline Graph path(int n) {
  if (n < 1) throw Error(ErrorKind::invalid_argument, "path needs n >= 1");
  Graph g(n);
  for (int v = 0; v + 1 < n; ++v) g.add_edge(v, v + 1);
  return g;
}

inline Graph cycle(int n) {
  if (n < 3) throw Error(ErrorKind::invalid_argument, "cycle length must be >= 3, got " + std::to_string(n));
  Graph g = path(n);
  g.add_edge(0, n - 1);
  return g;
}

/// Vertices of b are shifted by a.n().
inline Graph disjoint_union(const Graph& a, const Graph& b) {
  Graph g(a.n() + b.n());
  for (auto [u, v] : a.edges()) g.add_edge(u, v);
  for (auto [u, v] : b.edges()) g.add_edge(a.n() + u, a.n() + v);
  return g;
}

inline Graph disjoint_union(std::span<const Graph> parts) {
  Graph g(0);
  for (const auto& p : parts) g = disjoint_union(g, p);
  return g;
}

/// k disjoint copies of g.
inline Graph copies(const Graph& g, int k) {
  Graph out(0);
  for (int i = 0; i < k; ++i) out = disjoint_union(out, g);
  return out;
}

inline Graph complement(const Graph& g) {
  Graph c(g.n());
  for (int u = 0; u < g.n(); ++u)
    for (int v = u + 1; v < g.n(); ++v)
      if (!g.has_edge(u, v)) c.add_edge(u, v);
  return c;
}

/// Vertices are the edges of g in edges() order; two are adjacent when the
/// edges share an endpoint.
inline Graph line_graph(const Graph& g) {
  auto es = g.edges();
  Graph l(static_cast<int>(es.size()));
  for (std::size_t i = 0; i < es.size(); ++i)
    for (std::size_t j = i + 1; j < es.size(); ++j) {
      auto [a, b] = es[i];
      auto [c, d] = es[j];
      if (a == c || a == d || b == c || b == d) l.add_edge(static_cast<int>(i), static_cast<int>(j));
    }
  return l;
}

/// Disjoint union of cycles with the given lengths (each >= 3).
inline Graph cycle_union(std::span<const int> lengths) {
  Graph g(0);
  for (int len : lengths) {
    if (len < 3)
      throw Error(ErrorKind::invalid_argument, "partition part " + std::to_string(len) + " is below 3");
    g = disjoint_union(g, cycle(len));
  }
  return g;
}

inline Graph cycle_union_complement(std::span<const int> lengths) { return complement(cycle_union(lengths)); }

}  // namespace make

/// Builds a parameterised family by name: "empty", "complete", "star",
/// "complete-bipartite", "path", "cycle", "cycle-union",
/// "cycle-union-complement".
inline Graph construct(std::string_view family, std::span<const int> params) {
  auto need = [&](std::size_t k) {
    if (params.size() != k)
      throw Error(ErrorKind::invalid_argument,
                  std::string(family) + " takes " + std::to_string(k) + " parameter(s)");
  };
  if (family == "empty") { need(1); return make::empty(params[0]); }
  if (family == "complete") { need(1); return make::complete(params[0]); }
  if (family == "star") { need(1); return make::star(params[0]); }
  if (family == "complete-bipartite") { need(2); return make::complete_bipartite(params[0], params[1]); }
  if (family == "path") { need(1); return make::path(params[0]); }
  if (family == "cycle") { need(1); return make::cycle(params[0]); }
  if (family == "cycle-union") return make::cycle_union(params);
  if (family == "cycle-union-complement") return make::cycle_union_complement(params);
  throw Error(ErrorKind::invalid_argument, "unknown graph family '" + std::string(family) + "'");
}

}  // namespace genergy
