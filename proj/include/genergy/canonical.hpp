#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <limits>
#include <numeric>
#include <span>
#include <vector>

#include "genergy/graph.hpp"

namespace genergy::canon {

/// Canonical adjacency rows: row i holds bit j when the vertices at canonical
/// positions i and j are adjacent. Two graphs are isomorphic iff their forms
/// are equal.
using Form = std::vector<std::uint64_t>;

struct Labeling {
  /// order[i] is the vertex placed at canonical position i.
  std::vector<int> order;
  /// orbit[v] is the smallest vertex in v's automorphism orbit.
  std::vector<int> orbit;
  Form form;
  int generators = 0;
};

namespace detail {

constexpr int kMaxN = 64;
using Perm = std::array<std::uint8_t, kMaxN>;

struct Partition {
  std::array<std::uint8_t, kMaxN> elem{};
  // end[s] is one past the last position of the cell starting at s; only
  // meaningful at cell starts.
  std::array<std::uint8_t, kMaxN + 1> end{};
  int cells = 0;
};

struct UnionFind {
  std::array<std::uint8_t, kMaxN> parent{};
  explicit UnionFind(int n) {
    for (int i = 0; i < n; ++i) parent[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(i);
  }
  int find(int v) {
    while (parent[static_cast<std::size_t>(v)] != v) {
      parent[static_cast<std::size_t>(v)] = parent[parent[static_cast<std::size_t>(v)]];
      v = parent[static_cast<std::size_t>(v)];
    }
    return v;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (a < b) std::swap(a, b);
    parent[static_cast<std::size_t>(a)] = static_cast<std::uint8_t>(b);
  }
};

class Search {
 public:
  Search(std::span<const std::uint64_t> rows) : rows_(rows), n_(static_cast<int>(rows.size())) {}

  Labeling run() {
    Partition p;
    for (int i = 0; i < n_; ++i) p.elem[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(i);
    p.end[0] = static_cast<std::uint8_t>(n_);
    p.cells = 1;
    refine(p, 0);
    std::vector<int> path;
    dfs(p, path);

    Labeling out;
    out.order.assign(best_order_.begin(), best_order_.begin() + n_);
    out.form = best_cert_;
    UnionFind uf(n_);
    for (const auto& g : gens_)
      for (int v = 0; v < n_; ++v) uf.unite(v, g[static_cast<std::size_t>(v)]);
    out.orbit.resize(static_cast<std::size_t>(n_));
    for (int v = 0; v < n_; ++v) out.orbit[static_cast<std::size_t>(v)] = uf.find(v);
    out.generators = static_cast<int>(gens_.size());
    return out;
  }

 private:
  static constexpr int kNoJump = std::numeric_limits<int>::max();

  std::uint64_t cell_mask(const Partition& p, int s) const {
    std::uint64_t m = 0;
    for (int i = s; i < p.end[static_cast<std::size_t>(s)]; ++i) m |= std::uint64_t{1} << p.elem[static_cast<std::size_t>(i)];
    return m;
  }

  // Refines to the coarsest equitable partition finer than p, splitting
  // against the queued cells. Fragments of a split cell are ordered by
  // ascending neighbour count, which keeps the result independent of vertex
  // names. A cell start is queued at most once at a time, so a ring of kMaxN
  // slots suffices.
  void refine(Partition& p, int first_splitter) const {
    std::array<std::uint8_t, kMaxN> ring{};
    std::array<bool, kMaxN> queued{};
    int head = 0;
    int size = 0;
    auto push = [&](int s) {
      queued[static_cast<std::size_t>(s)] = true;
      ring[static_cast<std::size_t>((head + size++) % kMaxN)] = static_cast<std::uint8_t>(s);
    };
    push(first_splitter);
    std::array<std::uint8_t, kMaxN> count{};
    while (size > 0 && p.cells < n_) {
      const int w = ring[static_cast<std::size_t>(head)];
      head = (head + 1) % kMaxN;
      --size;
      queued[static_cast<std::size_t>(w)] = false;
      const std::uint64_t wmask = cell_mask(p, w);
      for (int s = 0; s < n_;) {
        const int e = p.end[static_cast<std::size_t>(s)];
        if (e - s > 1) {
          bool uniform = true;
          for (int i = s; i < e; ++i) {
            auto v = p.elem[static_cast<std::size_t>(i)];
            count[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(std::popcount(rows_[v] & wmask));
            if (count[static_cast<std::size_t>(i)] != count[static_cast<std::size_t>(s)]) uniform = false;
          }
          if (!uniform) {
            for (int i = s + 1; i < e; ++i) {
              auto ce = count[static_cast<std::size_t>(i)];
              auto ve = p.elem[static_cast<std::size_t>(i)];
              int j = i - 1;
              while (j >= s && count[static_cast<std::size_t>(j)] > ce) {
                count[static_cast<std::size_t>(j + 1)] = count[static_cast<std::size_t>(j)];
                p.elem[static_cast<std::size_t>(j + 1)] = p.elem[static_cast<std::size_t>(j)];
                --j;
              }
              count[static_cast<std::size_t>(j + 1)] = ce;
              p.elem[static_cast<std::size_t>(j + 1)] = ve;
            }
            int frag = s;
            for (int i = s + 1; i <= e; ++i) {
              if (i == e || count[static_cast<std::size_t>(i)] != count[static_cast<std::size_t>(frag)]) {
                p.end[static_cast<std::size_t>(frag)] = static_cast<std::uint8_t>(i);
                if (frag != s) ++p.cells;
                if (!queued[static_cast<std::size_t>(frag)]) push(frag);
                frag = i;
              }
            }
          }
        }
        s = e;
      }
    }
  }

  Form certificate(const Partition& p) const {
    std::array<std::uint8_t, kMaxN> pos{};
    for (int i = 0; i < n_; ++i) pos[p.elem[static_cast<std::size_t>(i)]] = static_cast<std::uint8_t>(i);
    Form cert(static_cast<std::size_t>(n_), 0);
    for (int i = 0; i < n_; ++i) {
      std::uint64_t row = rows_[p.elem[static_cast<std::size_t>(i)]];
      std::uint64_t out = 0;
      while (row) {
        int u = std::countr_zero(row);
        row &= row - 1;
        out |= std::uint64_t{1} << pos[static_cast<std::size_t>(u)];
      }
      cert[static_cast<std::size_t>(i)] = out;
    }
    return cert;
  }

  void add_generator(const std::array<std::uint8_t, kMaxN>& from, const std::array<std::uint8_t, kMaxN>& to) {
    Perm g{};
    for (int i = 0; i < n_; ++i) g[from[static_cast<std::size_t>(i)]] = to[static_cast<std::size_t>(i)];
    gens_.push_back(g);
  }

  int leaf(const Partition& p, const std::vector<int>& path) {
    Form cert = certificate(p);
    if (!have_first_) {
      have_first_ = true;
      first_cert_ = cert;
      first_order_ = p.elem;
      first_path_ = path;
      best_cert_ = std::move(cert);
      best_order_ = p.elem;
      return kNoJump;
    }
    if (cert == first_cert_) {
      add_generator(first_order_, p.elem);
      std::size_t common = 0;
      while (common < path.size() && common < first_path_.size() && path[common] == first_path_[common]) ++common;
      return static_cast<int>(common);
    }
    if (cert == best_cert_) {
      add_generator(best_order_, p.elem);
      return kNoJump;
    }
    if (cert > best_cert_) {
      best_cert_ = std::move(cert);
      best_order_ = p.elem;
    }
    return kNoJump;
  }

  int dfs(const Partition& p, std::vector<int>& path) {
    if (p.cells == n_) return leaf(p, path);
    const int level = static_cast<int>(path.size());

    int s = 0;
    while (p.end[static_cast<std::size_t>(s)] - s == 1) s = p.end[static_cast<std::size_t>(s)];
    const int e = p.end[static_cast<std::size_t>(s)];
    std::array<std::uint8_t, kMaxN> children{};
    const int nc = e - s;
    for (int i = 0; i < nc; ++i) children[static_cast<std::size_t>(i)] = p.elem[static_cast<std::size_t>(s + i)];
    std::sort(children.begin(), children.begin() + nc);

    std::array<std::uint8_t, kMaxN> explored{};
    int nexplored = 0;
    for (int ci = 0; ci < nc; ++ci) {
      const int v = children[static_cast<std::size_t>(ci)];
      if (nexplored > 0 && !gens_.empty() && equivalent_to_explored(v, explored, nexplored, path)) continue;

      Partition child = p;
      int pos = s;
      while (child.elem[static_cast<std::size_t>(pos)] != v) ++pos;
      std::swap(child.elem[static_cast<std::size_t>(s)], child.elem[static_cast<std::size_t>(pos)]);
      child.end[static_cast<std::size_t>(s)] = static_cast<std::uint8_t>(s + 1);
      child.end[static_cast<std::size_t>(s + 1)] = static_cast<std::uint8_t>(e);
      ++child.cells;
      refine(child, s);

      path.push_back(v);
      const int jump = dfs(child, path);
      path.pop_back();
      explored[static_cast<std::size_t>(nexplored++)] = static_cast<std::uint8_t>(v);
      if (jump < level) return jump;
    }
    return kNoJump;
  }

  // v is skipped when a known automorphism fixing the current path pointwise
  // maps it onto an already explored sibling.
  bool equivalent_to_explored(int v, const std::array<std::uint8_t, kMaxN>& explored, int nexplored,
                              const std::vector<int>& path) const {
    UnionFind uf(n_);
    bool any = false;
    for (const auto& g : gens_) {
      bool fixes = true;
      for (int u : path)
        if (g[static_cast<std::size_t>(u)] != u) {
          fixes = false;
          break;
        }
      if (!fixes) continue;
      any = true;
      for (int u = 0; u < n_; ++u) uf.unite(u, g[static_cast<std::size_t>(u)]);
    }
    if (!any) return false;
    const int root = uf.find(v);
    for (int i = 0; i < nexplored; ++i)
      if (uf.find(explored[static_cast<std::size_t>(i)]) == root) return true;
    return false;
  }

  std::span<const std::uint64_t> rows_;
  int n_;
  bool have_first_ = false;
  Form first_cert_;
  std::array<std::uint8_t, kMaxN> first_order_{};
  std::vector<int> first_path_;
  Form best_cert_;
  std::array<std::uint8_t, kMaxN> best_order_{};
  std::vector<Perm> gens_;
};

}  // namespace detail

/// Canonical labeling by equitable refinement and individualisation, with
/// automorphism pruning. Requires n <= 64.
inline Labeling canonical_labeling(std::span<const std::uint64_t> rows) {
  if (rows.size() > static_cast<std::size_t>(detail::kMaxN))
    throw Error(ErrorKind::unsupported, "canonical labeling supports n <= 64");
  if (rows.empty()) return {};
  return detail::Search(rows).run();
}

inline Labeling canonical_labeling(const Graph& g) {
  auto rows = g.rows64();
  return canonical_labeling(rows);
}

inline Form canonical_form(const Graph& g) { return canonical_labeling(g).form; }

inline Graph canonical_graph(const Graph& g) { return Graph::from_rows64(canonical_form(g)); }

inline bool isomorphic(const Graph& a, const Graph& b) {
  return a.n() == b.n() && a.m() == b.m() && canonical_form(a) == canonical_form(b);
}

}  // namespace genergy::canon
