#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include "genergy/canonical.hpp"
#include "genergy/graph6.hpp"
#include "genergy/spectrum.hpp"

namespace genergy {

struct ClassConstraints {
  bool connected = false;
  bool bipartite = false;
  bool tree = false;
  /// Complement is a disjoint union of cycles, i.e. regular of degree n-3.
  bool complement_cycles = false;
  std::optional<int> regular;
};

struct SearchLimits {
  std::uint64_t max_nodes = 10'000'000;
  double max_seconds = 300.0;
  unsigned workers = 1;
  /// Polled between nodes; setting it stops the search (non-exhaustive).
  std::shared_ptr<std::atomic<bool>> cancel;
  /// Called periodically with (nodes visited, graphs examined).
  std::function<void(std::uint64_t, std::uint64_t)> progress;
};

enum class SearchObjective { max_energy, min_energy, realize };

struct SearchSpec {
  int n = 1;
  std::optional<int> m;
  ClassConstraints constraints;
  SearchObjective objective = SearchObjective::max_energy;
  /// Realization target and per-eigenvalue matching tolerance.
  Spectrum target;
  double tol = 1e-6;
  SearchLimits limits;
};

struct FoundGraph {
  Graph graph;
  std::string graph6;
  Spectrum spectrum;
  double energy = 0;
};

struct SearchResult {
  /// Co-optimal graphs (max/min) or every graph matching the target.
  std::vector<FoundGraph> best;
  std::uint64_t graphs_examined = 0;
  std::uint64_t nodes_visited = 0;
  /// True iff the whole class was enumerated (or a fast-fail certificate
  /// applies to every graph).
  bool exhausted = false;
  bool empty_class = false;
  /// Necessary conditions the realization target violates.
  std::vector<std::string> fast_fail;

  bool certified_absent() const { return exhausted && best.empty(); }
};

struct EnumerationStats {
  std::uint64_t nodes_visited = 0;
  std::uint64_t graphs_emitted = 0;
  bool exhausted = true;
};

// ---------------------------------------------------------------------------
// Cycle partitions

/// Partitions of n into parts >= 3, parts non-decreasing, in lexicographic
/// order.
inline std::vector<std::vector<int>> cycle_partitions(int n) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  std::function<void(int, int)> rec = [&](int rest, int min_part) {
    if (rest == 0) {
      out.push_back(cur);
      return;
    }
    for (int part = min_part; part <= rest; ++part) {
      if (rest - part != 0 && rest - part < part) continue;
      cur.push_back(part);
      rec(rest - part, part);
      cur.pop_back();
    }
  };
  if (n >= 3) rec(n, 3);
  return out;
}

/// Spectrum of the complement of the disjoint cycle union, computed from
/// cycle spectra: the union is 2-regular, so the complement takes n-3 for
/// one eigenvalue 2 and -v-1 for every other v.
inline Spectrum cycle_partition_spectrum(std::span<const int> parts, int n) {
  int total = 0;
  std::vector<double> values;
  for (int len : parts) {
    if (len < 3) throw Error(ErrorKind::invalid_argument, "partition part " + std::to_string(len) + " is below 3");
    total += len;
    auto cs = cycle_spectrum(len);
    values.insert(values.end(), cs.begin(), cs.end());
  }
  if (total != n)
    throw Error(ErrorKind::invalid_argument,
                "partition sums to " + std::to_string(total) + ", expected " + std::to_string(n));
  return complement_spectrum_regular(Spectrum(std::move(values)), n);
}

// ---------------------------------------------------------------------------
// Spec handling

inline SearchSpec normalized(SearchSpec spec) {
  const int n = spec.n;
  auto& c = spec.constraints;
  auto bad = [](const std::string& msg) { return Error(ErrorKind::invalid_argument, msg); };
  if (n < 1) throw bad("n must be >= 1");
  if (n > graph6::kMaxOrder) throw Error(ErrorKind::unsupported, "search supports n <= 62");
  if (spec.limits.max_nodes == 0 || !(spec.limits.max_seconds > 0)) throw bad("budgets must be positive");
  if (spec.m && (*spec.m < 0 || *spec.m > n * (n - 1) / 2)) throw bad("edge count out of range");

  auto pin_m = [&](int value, const char* why) {
    if (spec.m && *spec.m != value)
      throw bad(std::string(why) + " requires m=" + std::to_string(value) + ", got m=" + std::to_string(*spec.m));
    spec.m = value;
  };
  auto pin_regular = [&](int r, const char* why) {
    if (c.regular && *c.regular != r)
      throw bad(std::string(why) + " requires degree " + std::to_string(r));
    c.regular = r;
  };
  if (c.complement_cycles) {
    if (n < 3) throw bad("complement-of-cycles class needs n >= 3");
    pin_regular(n - 3, "complement-of-cycles");
  }
  if (c.regular) {
    const int r = *c.regular;
    if (r < 0 || r > n - 1) throw bad("degree out of range");
    if ((n * r) % 2 != 0) throw bad("n*r must be even for a regular graph");
    pin_m(n * r / 2, "regular degree");
  }
  if (c.tree) {
    pin_m(n - 1, "tree");
    c.connected = true;
    c.bipartite = true;
  }
  if (spec.objective == SearchObjective::realize) {
    if (spec.target.size() != static_cast<std::size_t>(n))
      throw bad("target spectrum has " + std::to_string(spec.target.size()) + " values, expected n=" +
                std::to_string(n));
    if (!(spec.tol > 0)) throw bad("tolerance must be positive");
  }
  return spec;
}

inline bool satisfies(const Graph& g, const SearchSpec& spec) {
  const auto& c = spec.constraints;
  if (g.n() != spec.n) return false;
  if (spec.m && g.m() != *spec.m) return false;
  if (c.regular) {
    for (int v = 0; v < g.n(); ++v)
      if (g.degree(v) != *c.regular) return false;
  }
  if (c.bipartite && !is_bipartite(g)) return false;
  if (c.connected && !is_connected(g)) return false;
  if (c.tree && !is_tree(g)) return false;
  if (c.complement_cycles) {
    auto comp = make::complement(g);
    for (int v = 0; v < comp.n(); ++v)
      if (comp.degree(v) != 2) return false;
  }
  return true;
}

namespace detail {

class Budget {
 public:
  explicit Budget(const SearchLimits& limits)
      : limits_(limits),
        deadline_(std::chrono::steady_clock::now() +
                  std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                      std::chrono::duration<double>(limits.max_seconds))) {}

  /// Counts one node; false once any limit is reached.
  bool charge() {
    if (stopped_.load(std::memory_order_relaxed)) return false;
    auto count = nodes_.fetch_add(1, std::memory_order_relaxed) + 1;
    if (count > limits_.max_nodes) return stop();
    if ((count & 1023) == 0) {
      if (std::chrono::steady_clock::now() > deadline_) return stop();
      if (limits_.cancel && limits_.cancel->load()) return stop();
      report();
    }
    return true;
  }

  void add_graph() { graphs_.fetch_add(1, std::memory_order_relaxed); }
  bool stopped() const { return stopped_.load(std::memory_order_relaxed); }
  std::uint64_t nodes() const { return std::min<std::uint64_t>(nodes_.load(), limits_.max_nodes); }
  std::uint64_t graphs() const { return graphs_.load(); }

  void report() {
    if (!limits_.progress) return;
    std::lock_guard lock(progress_mutex_);
    limits_.progress(nodes(), graphs());
  }

 private:
  bool stop() {
    stopped_.store(true);
    return false;
  }

  const SearchLimits& limits_;
  std::chrono::steady_clock::time_point deadline_;
  std::atomic<std::uint64_t> nodes_{0};
  std::atomic<std::uint64_t> graphs_{0};
  std::atomic<bool> stopped_{false};
  std::mutex progress_mutex_;
};

/// Hereditary test applied to every intermediate graph (rows, order k).
using Prune = std::function<bool(std::span<const std::uint64_t>)>;

/// Orderly generation by canonical vertex augmentation. A graph on k+1
/// vertices is accepted from its parent only when the added vertex lies in
/// the automorphism orbit of the canonical deletion vertex: the minimum
/// degree vertex with the largest canonical position. All pruning rules hold
/// for every induced subgraph of a graph in the class.
class Augmenter {
 public:
  struct Node {
    std::array<std::uint64_t, 64> rows{};
    int k = 0;
    int edges = 0;
  };

  Augmenter(const SearchSpec& spec, Budget& budget, Prune extra)
      : spec_(spec), budget_(budget), extra_(std::move(extra)), n_(spec.n) {
    const auto& c = spec.constraints;
    regular_ = c.regular;
    max_degree_ = regular_ ? *regular_ : n_ - 1;
    bipartite_ = c.bipartite;
    forest_ = c.tree;
  }

  /// Depth-first expansion of node. Nodes reaching frontier_level are
  /// appended to frontier instead of expanded (when frontier is non-null).
  void expand(const Node& node, const std::function<bool(const Graph&)>& leaf, int frontier_level = -1,
              std::vector<Node>* frontier = nullptr) {
    if (budget_.stopped()) return;
    if (node.k == n_) {
      Graph g = Graph::from_rows64(std::span<const std::uint64_t>(node.rows.data(), static_cast<std::size_t>(n_)));
      if (!satisfies(g, spec_)) return;
      budget_.add_graph();
      if (!leaf(g)) halt_ = true;
      return;
    }
    if (frontier && node.k == frontier_level) {
      frontier->push_back(node);
      return;
    }
    for_each_child(node, [&](const Node& child) {
      expand(child, leaf, frontier_level, frontier);
      return !halt_ && !budget_.stopped();
    });
  }

  bool halted() const { return halt_; }

 private:
  template <class F>
  void for_each_child(const Node& node, F&& f) {
    const int k = node.k;
    const int remaining = n_ - (k + 1);
    std::array<int, 64> deg{};
    int min_deg = n_;
    for (int u = 0; u < k; ++u) {
      deg[static_cast<std::size_t>(u)] = std::popcount(node.rows[static_cast<std::size_t>(u)]);
      min_deg = std::min(min_deg, deg[static_cast<std::size_t>(u)]);
    }

    // Vertices whose remaining deficit cannot be met without the new vertex.
    std::uint64_t must = 0;
    std::uint64_t forbidden = 0;
    long deficit_sum = 0;
    if (regular_) {
      for (int u = 0; u < k; ++u) {
        const int d = *regular_ - deg[static_cast<std::size_t>(u)];
        if (d > remaining + 1) return;
        if (d > remaining) must |= std::uint64_t{1} << u;
        deficit_sum += d;
      }
    }
    for (int u = 0; u < k; ++u)
      if (deg[static_cast<std::size_t>(u)] >= max_degree_) forbidden |= std::uint64_t{1} << u;
    if (must & forbidden) return;

    // Component and colour labels for bipartite / forest checks.
    std::array<int, 64> comp{};
    std::array<int, 64> colour{};
    if (bipartite_ || forest_) label_components(node, comp, colour);

    int s_lo = std::popcount(must);
    int s_hi = std::min(k, max_degree_);
    if (regular_) s_lo = std::max(s_lo, *regular_ - remaining);
    if (spec_.m) s_hi = std::min(s_hi, *spec_.m - node.edges);
    s_hi = std::min(s_hi, min_deg + 1);  // new vertex must have minimum degree
    if (s_lo > s_hi) return;

    const std::uint64_t free_mask = (k == 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << k) - 1)) & ~forbidden & ~must;
    const int free_count = std::popcount(free_mask);

    std::set<canon::Form> seen;
    for (int s = s_lo; s <= s_hi; ++s) {
      const int extra = s - std::popcount(must);
      if (extra < 0 || extra > free_count) continue;
      if (regular_) {
        const long child_deficit = deficit_sum - 2L * s + *regular_;
        if (child_deficit > static_cast<long>(remaining) * *regular_) continue;
        if (child_deficit < static_cast<long>(remaining) * (*regular_ - remaining + 1)) continue;
        if ((child_deficit - static_cast<long>(remaining) * *regular_) % 2 != 0) continue;
      }
      // Gosper's hack over the free positions.
      std::uint64_t pick = extra == 0 ? 0 : ((extra == 64) ? ~std::uint64_t{0} : (std::uint64_t{1} << extra) - 1);
      while (true) {
        const std::uint64_t nbrs = must | deposit(pick, free_mask);
        if (!try_child(node, nbrs, s, deg, comp, colour, seen, f)) return;
        if (extra == 0 || extra == free_count) break;
        const std::uint64_t lowest = pick & (~pick + 1);
        const std::uint64_t ripple = pick + lowest;
        pick = (((ripple ^ pick) >> 2) / lowest) | ripple;
        if (pick >> free_count) break;
      }
    }
  }

  // Scatters the low bits of compact onto the set bits of mask.
  static std::uint64_t deposit(std::uint64_t compact, std::uint64_t mask) {
    std::uint64_t out = 0;
    while (compact && mask) {
      std::uint64_t low = mask & (~mask + 1);
      if (compact & 1U) out |= low;
      compact >>= 1;
      mask &= mask - 1;
    }
    return out;
  }

  void label_components(const Node& node, std::array<int, 64>& comp, std::array<int, 64>& colour) const {
    comp.fill(-1);
    int next = 0;
    for (int s = 0; s < node.k; ++s) {
      if (comp[static_cast<std::size_t>(s)] >= 0) continue;
      comp[static_cast<std::size_t>(s)] = next;
      colour[static_cast<std::size_t>(s)] = 0;
      std::vector<int> stack{s};
      while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        std::uint64_t row = node.rows[static_cast<std::size_t>(v)];
        while (row) {
          int u = std::countr_zero(row);
          row &= row - 1;
          if (comp[static_cast<std::size_t>(u)] < 0) {
            comp[static_cast<std::size_t>(u)] = next;
            colour[static_cast<std::size_t>(u)] = 1 - colour[static_cast<std::size_t>(v)];
            stack.push_back(u);
          }
        }
      }
      ++next;
    }
  }

  template <class F>
  bool try_child(const Node& node, std::uint64_t nbrs, int s, const std::array<int, 64>& deg,
                 const std::array<int, 64>& comp, const std::array<int, 64>& colour, std::set<canon::Form>& seen,
                 F& f) {
    const int k = node.k;
    const int remaining = n_ - (k + 1);

    // Minimum-degree rule: every other vertex must have degree >= s.
    for (int u = 0; u < k; ++u) {
      const int du = deg[static_cast<std::size_t>(u)] + static_cast<int>((nbrs >> u) & 1U);
      if (du < s) return true;
    }
    if (bipartite_ || forest_) {
      std::array<int, 64> seen_colour;
      seen_colour.fill(-1);
      std::uint64_t rest = nbrs;
      while (rest) {
        int u = std::countr_zero(rest);
        rest &= rest - 1;
        auto& sc = seen_colour[static_cast<std::size_t>(comp[static_cast<std::size_t>(u)])];
        if (sc >= 0 && (forest_ || sc != colour[static_cast<std::size_t>(u)])) return true;
        sc = colour[static_cast<std::size_t>(u)];
      }
    }
    const int child_edges = node.edges + s;
    if (spec_.m) {
      long future = static_cast<long>(remaining) * (remaining - 1) / 2;
      for (int u = 0; u <= k; ++u) {
        int du = u == k ? s : deg[static_cast<std::size_t>(u)] + static_cast<int>((nbrs >> u) & 1U);
        future += std::min(remaining, max_degree_ - du);
      }
      if (child_edges + future < *spec_.m) return true;
    }

    Node child = node;
    child.k = k + 1;
    child.edges = child_edges;
    child.rows[static_cast<std::size_t>(k)] = nbrs;
    std::uint64_t rest = nbrs;
    while (rest) {
      int u = std::countr_zero(rest);
      rest &= rest - 1;
      child.rows[static_cast<std::size_t>(u)] |= std::uint64_t{1} << k;
    }
    std::span<const std::uint64_t> rows(child.rows.data(), static_cast<std::size_t>(child.k));
    if (extra_ && !extra_(rows)) return true;

    auto lab = canon::canonical_labeling(rows);
    int chosen = -1;
    for (int i = child.k - 1; i >= 0; --i) {
      int v = lab.order[static_cast<std::size_t>(i)];
      if (std::popcount(child.rows[static_cast<std::size_t>(v)]) == s) {
        chosen = v;
        break;
      }
    }
    if (lab.orbit[static_cast<std::size_t>(chosen)] != lab.orbit[static_cast<std::size_t>(k)]) return true;
    if (!seen.insert(std::move(lab.form)).second) return true;
    if (!budget_.charge()) return false;
    return f(child);
  }

  const SearchSpec& spec_;
  Budget& budget_;
  Prune extra_;
  int n_;
  std::optional<int> regular_;
  int max_degree_ = 0;
  bool bipartite_ = false;
  bool forest_ = false;
  bool halt_ = false;
};

/// Trees through Pruefer sequences with isomorphism rejection.
inline void enumerate_trees_pruefer(const SearchSpec& spec, Budget& budget,
                                    const std::function<bool(const Graph&)>& leaf) {
  const int n = spec.n;
  std::set<canon::Form> seen;
  auto emit = [&](const Graph& g) {
    if (!seen.insert(canon::canonical_form(g)).second) return true;
    if (!satisfies(g, spec)) return true;
    budget.add_graph();
    return leaf(g);
  };
  if (n <= 2) {
    if (!budget.charge()) return;
    emit(n == 1 ? Graph(1) : make::complete(2));
    return;
  }
  std::vector<int> seq(static_cast<std::size_t>(n - 2), 0);
  while (true) {
    if (!budget.charge()) return;
    std::vector<int> degree(static_cast<std::size_t>(n), 1);
    for (int v : seq) ++degree[static_cast<std::size_t>(v)];
    Graph g(n);
    for (int v : seq) {
      int leaf_v = 0;
      while (degree[static_cast<std::size_t>(leaf_v)] != 1) ++leaf_v;
      g.add_edge(leaf_v, v);
      --degree[static_cast<std::size_t>(leaf_v)];
      --degree[static_cast<std::size_t>(v)];
    }
    int a = -1;
    for (int v = 0; v < n; ++v)
      if (degree[static_cast<std::size_t>(v)] == 1) {
        if (a < 0) {
          a = v;
        } else {
          g.add_edge(a, v);
          break;
        }
      }
    if (!emit(g)) return;
    int pos = n - 3;
    while (pos >= 0 && seq[static_cast<std::size_t>(pos)] == n - 1) seq[static_cast<std::size_t>(pos--)] = 0;
    if (pos < 0) return;
    ++seq[static_cast<std::size_t>(pos)];
  }
}

inline void enumerate_cycle_complements(const SearchSpec& spec, Budget& budget,
                                        const std::function<bool(const Graph&)>& leaf) {
  for (const auto& parts : cycle_partitions(spec.n)) {
    if (!budget.charge()) return;
    Graph g = make::cycle_union_complement(parts);
    if (!satisfies(g, spec)) continue;
    budget.add_graph();
    if (!leaf(g)) return;
  }
}

inline void run_enumeration(const SearchSpec& spec, Budget& budget, const Prune& extra,
                            const std::function<bool(const Graph&)>& leaf) {
  if (spec.constraints.complement_cycles) {
    enumerate_cycle_complements(spec, budget, leaf);
  } else if (spec.constraints.tree && spec.n <= 9) {
    enumerate_trees_pruefer(spec, budget, leaf);
  } else {
    Augmenter aug(spec, budget, extra);
    aug.expand(Augmenter::Node{}, leaf);
  }
}

/// Parallel driver: the augmentation tree is cut at a fixed depth, each
/// frontier node becomes a work unit, and per-unit results are reduced in
/// unit order so the outcome does not depend on the worker count.
template <class UnitResult>
std::vector<UnitResult> run_units(const SearchSpec& spec, Budget& budget, const Prune& extra,
                                  const std::function<bool(UnitResult&, const Graph&)>& leaf) {
  const unsigned workers = std::max(1U, spec.limits.workers);
  const bool splittable = !spec.constraints.complement_cycles && !(spec.constraints.tree && spec.n <= 9);
  if (workers == 1 || !splittable || spec.n < 8) {
    std::vector<UnitResult> one(1);
    run_enumeration(spec, budget, extra, [&](const Graph& g) { return leaf(one[0], g); });
    return one;
  }
  const int level = std::min(spec.n - 1, 6);
  std::vector<Augmenter::Node> frontier;
  {
    Augmenter aug(spec, budget, extra);
    aug.expand(Augmenter::Node{}, [](const Graph&) { return true; }, level, &frontier);
  }
  std::vector<UnitResult> results(frontier.size());
  std::atomic<std::size_t> next{0};
  std::atomic<bool> halted{false};
  auto work = [&] {
    while (!halted.load()) {
      std::size_t i = next.fetch_add(1);
      if (i >= frontier.size()) return;
      Augmenter aug(spec, budget, extra);
      aug.expand(frontier[i], [&](const Graph& g) { return leaf(results[i], g); });
      if (aug.halted()) halted.store(true);
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < workers; ++t) pool.emplace_back(work);
  for (auto& t : pool) t.join();
  return results;
}

/// Cauchy interlacing against the target: an induced subgraph on k vertices
/// has mu_i in [lambda_{i+n-k}, lambda_i].
inline Prune interlacing_prune(const Spectrum& target, double tol) {
  return [target, tol](std::span<const std::uint64_t> rows) {
    const int k = static_cast<int>(rows.size());
    const int n = static_cast<int>(target.size());
    if (k < 2 || k == n) return true;
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(k, k);
    for (int u = 0; u < k; ++u)
      for (int v = 0; v < k; ++v)
        if ((rows[static_cast<std::size_t>(u)] >> v) & 1U) a(u, v) = 1.0;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a, Eigen::EigenvaluesOnly);
    const auto& mu = solver.eigenvalues();  // ascending
    for (int i = 0; i < k; ++i) {
      const double value = mu(k - 1 - i);  // i-th largest
      if (value > target[static_cast<std::size_t>(i)] + tol) return false;
      if (value < target[static_cast<std::size_t>(i + n - k)] - tol) return false;
    }
    return true;
  };
}

}  // namespace detail

/// Streams one representative per isomorphism class of the constrained
/// class, in a deterministic order. The visitor returns false to stop early.
inline EnumerationStats enumerate(const SearchSpec& raw, const std::function<bool(const Graph&)>& visit) {
  SearchSpec spec = normalized(raw);
  detail::Budget budget(spec.limits);
  bool halted = false;
  detail::run_enumeration(spec, budget, nullptr, [&](const Graph& g) {
    if (!visit(g)) halted = true;
    return !halted;
  });
  budget.report();
  return {budget.nodes(), budget.graphs(), !budget.stopped() && !halted};
}

inline std::vector<Graph> enumerate_all(const SearchSpec& spec, EnumerationStats* stats = nullptr) {
  std::vector<Graph> out;
  auto s = enumerate(spec, [&](const Graph& g) {
    out.push_back(g);
    return true;
  });
  if (stats) *stats = s;
  return out;
}

namespace detail {

inline FoundGraph describe(const Graph& g, Spectrum spectrum) {
  FoundGraph f;
  f.energy = energy(spectrum);
  f.spectrum = std::move(spectrum);
  f.graph6 = graph6::encode(g);
  f.graph = g;
  return f;
}

inline void merge_extreme(std::vector<FoundGraph>& best, FoundGraph candidate, bool maximize) {
  constexpr double kTie = 1e-9;
  if (best.empty()) {
    best.push_back(std::move(candidate));
    return;
  }
  const double ref = best.front().energy;
  const bool better = maximize ? candidate.energy > ref + kTie : candidate.energy < ref - kTie;
  if (better) {
    best.clear();
    best.push_back(std::move(candidate));
  } else if (std::abs(candidate.energy - ref) <= kTie) {
    best.push_back(std::move(candidate));
  }
}

}  // namespace detail

/// Maximal or minimal energy members of the class. Every co-optimal graph
/// (energies within 1e-9) is reported, in enumeration order.
inline SearchResult extremal_energy(const SearchSpec& raw) {
  SearchSpec spec = normalized(raw);
  if (spec.objective == SearchObjective::realize)
    throw Error(ErrorKind::invalid_argument, "extremal_energy needs a max or min objective");
  const bool maximize = spec.objective == SearchObjective::max_energy;
  detail::Budget budget(spec.limits);
  using Unit = std::vector<FoundGraph>;
  auto units = detail::run_units<Unit>(spec, budget, nullptr, [&](Unit& unit, const Graph& g) {
    detail::merge_extreme(unit, detail::describe(g, eigenvalues(g)), maximize);
    return true;
  });
  SearchResult r;
  for (auto& unit : units)
    for (auto& f : unit) detail::merge_extreme(r.best, std::move(f), maximize);
  budget.report();
  r.nodes_visited = budget.nodes();
  r.graphs_examined = budget.graphs();
  r.exhausted = !budget.stopped();
  r.empty_class = r.exhausted && r.graphs_examined == 0;
  return r;
}

/// Necessary conditions for a target spectrum, each checked with the error
/// that a per-entry tolerance tol can induce in the corresponding moment.
inline std::vector<std::string> realization_fast_fail(const SearchSpec& spec) {
  const auto& t = spec.target;
  const double tol = spec.tol;
  const int n = spec.n;
  std::vector<std::string> reasons;
  double abs_sum = 0;
  double sq = 0;
  for (double x : t) {
    abs_sum += std::abs(x);
    sq += x * x;
  }
  const double m1 = spectral_moment(t, 1);
  const double m2 = spectral_moment(t, 2);
  const double m3 = spectral_moment(t, 3);
  auto slack = [](double v) { return 1e-9 * std::max(1.0, std::abs(v)); };

  if (std::abs(m1) > n * tol + slack(abs_sum)) reasons.push_back("moment-1: eigenvalues sum to " + std::to_string(m1));

  const double bound2 = 2 * abs_sum * tol + slack(m2);
  double two_m = spec.m ? 2.0 * *spec.m : 2.0 * std::round(m2 / 2.0);
  if (std::abs(m2 - two_m) > bound2) {
    reasons.push_back("moment-2: sum of squares " + std::to_string(m2) + " is not " +
                      (spec.m ? "2m=" + std::to_string(static_cast<int>(two_m)) : std::string("an even integer")));
  }

  const double bound3 = 3 * sq * tol + slack(m3);
  const double six_t = 6.0 * std::max(0.0, std::round(m3 / 6.0));
  if (std::abs(m3 - six_t) > bound3)
    reasons.push_back("moment-3: third moment / 6 = " + std::to_string(m3 / 6.0) +
                      " is not a non-negative integer");

  if (n > 0) {
    const double average = two_m / n;
    if (t.largest() + tol < average - slack(average))
      reasons.push_back("spectral-radius: largest eigenvalue is below the average degree");
    if (spec.constraints.regular && std::abs(t.largest() - *spec.constraints.regular) > tol)
      reasons.push_back("regular: largest eigenvalue differs from the degree");
  }
  if (spec.constraints.bipartite && !is_bipartite_spectral(t, 2 * tol + 1e-12))
    reasons.push_back("bipartite: target is not symmetric about 0");
  return reasons;
}

/// Searches the class for graphs whose spectrum matches the target entrywise
/// within spec.tol. An exhausted search with no match certifies that no
/// graph of the class has the target spectrum.
inline SearchResult realize_spectrum(const SearchSpec& raw) {
  SearchSpec spec = raw;
  if (spec.objective != SearchObjective::realize)
    throw Error(ErrorKind::invalid_argument, "realize_spectrum needs a realize objective");
  if (spec.target.size() != static_cast<std::size_t>(spec.n))
    throw Error(ErrorKind::invalid_argument, "target spectrum length differs from n");

  SearchResult r;
  {
    SearchSpec probe = spec;
    if (probe.constraints.regular && !probe.m && probe.n > 0) probe.m = probe.n * *probe.constraints.regular / 2;
    r.fast_fail = realization_fast_fail(probe);
  }
  if (!r.fast_fail.empty()) {
    r.exhausted = true;
    return r;
  }
  if (!spec.m) spec.m = static_cast<int>(std::lround(spectral_moment(spec.target, 2) / 2.0));
  // A largest eigenvalue equal to the average degree forces regularity.
  const double average = 2.0 * *spec.m / spec.n;
  if (!spec.constraints.regular && std::abs(spec.target.largest() - average) <= spec.tol &&
      std::abs(average - std::round(average)) < 1e-12) {
    spec.constraints.regular = static_cast<int>(std::lround(average));
  }
  spec = normalized(spec);

  detail::Budget budget(spec.limits);
  auto prune = detail::interlacing_prune(spec.target, spec.tol + 1e-9);
  using Unit = std::vector<FoundGraph>;
  auto units = detail::run_units<Unit>(spec, budget, prune, [&](Unit& unit, const Graph& g) {
    auto s = eigenvalues(g);
    if (spectra_match(s, spec.target, spec.tol)) unit.push_back(detail::describe(g, std::move(s)));
    return true;
  });
  for (auto& unit : units)
    for (auto& f : unit) r.best.push_back(std::move(f));
  budget.report();
  r.nodes_visited = budget.nodes();
  r.graphs_examined = budget.graphs();
  r.exhausted = !budget.stopped();
  r.empty_class = r.exhausted && r.graphs_examined == 0;
  return r;
}

}  // namespace genergy
