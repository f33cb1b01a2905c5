#include <gtest/gtest.h>

#include <map>
#include <set>

#include "genergy/search.hpp"
#include "oracles.hpp"

using namespace genergy;

namespace {

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorKind::invalid_argument;
}

// Independent class predicates for the brute-force side.
bool oracle_connected(const Graph& g) {
  if (g.n() == 0) return true;
  std::vector<bool> seen(static_cast<std::size_t>(g.n()), false);
  std::vector<int> stack{0};
  seen[0] = true;
  int reached = 1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int u = 0; u < g.n(); ++u)
      if (g.has_edge(u, v) && !seen[static_cast<std::size_t>(u)]) {
        seen[static_cast<std::size_t>(u)] = true;
        ++reached;
        stack.push_back(u);
      }
  }
  return reached == g.n();
}

bool oracle_bipartite(const Graph& g) {
  // try every 2-colouring
  const int n = g.n();
  for (std::uint32_t c = 0; c < (1U << n); ++c) {
    bool ok = true;
    for (auto [u, v] : g.edges())
      if (((c >> u) & 1U) == ((c >> v) & 1U)) ok = false;
    if (ok) return true;
  }
  return false;
}

bool oracle_regular(const Graph& g, int r) {
  for (int v = 0; v < g.n(); ++v) {
    int d = 0;
    for (int u = 0; u < g.n(); ++u) d += g.has_edge(u, v) ? 1 : 0;
    if (d != r) return false;
  }
  return true;
}

std::vector<Graph> oracle_class(int n, const std::function<bool(const Graph&)>& keep) {
  std::vector<Graph> out;
  for (auto mask : oracle::isomorphism_classes(n)) {
    auto g = oracle::from_mask(n, mask);
    if (keep(g)) out.push_back(g);
  }
  return out;
}

std::set<canon::Form> forms(const std::vector<Graph>& graphs) {
  std::set<canon::Form> out;
  for (const auto& g : graphs) out.insert(canon::canonical_form(g));
  return out;
}

SearchSpec spec_for(int n) {
  SearchSpec s;
  s.n = n;
  return s;
}

std::size_t count(const SearchSpec& spec) {
  EnumerationStats stats;
  auto all = enumerate_all(spec, &stats);
  EXPECT_TRUE(stats.exhausted);
  EXPECT_EQ(stats.graphs_emitted, all.size());
  return all.size();
}

}  // namespace

TEST(Enumerate, AllGraphsMatchKnownCounts) {
  const std::vector<std::size_t> want = {1, 2, 4, 11, 34, 156, 1044, 12346};
  for (int n = 1; n <= 8; ++n) EXPECT_EQ(count(spec_for(n)), want[static_cast<std::size_t>(n - 1)]) << "n=" << n;
}

TEST(Enumerate, ConnectedGraphsMatchKnownCounts) {
  const std::vector<std::size_t> want = {1, 1, 2, 6, 21, 112, 853, 11117};
  for (int n = 1; n <= 8; ++n) {
    auto s = spec_for(n);
    s.constraints.connected = true;
    EXPECT_EQ(count(s), want[static_cast<std::size_t>(n - 1)]) << "n=" << n;
  }
}

TEST(Enumerate, TreesMatchKnownCounts) {
  const std::vector<std::size_t> want = {1, 1, 1, 2, 3, 6, 11, 23, 47, 106, 235, 551};
  for (int n = 1; n <= 12; ++n) {
    auto s = spec_for(n);
    s.constraints.tree = true;
    auto trees = enumerate_all(s);
    EXPECT_EQ(trees.size(), want[static_cast<std::size_t>(n - 1)]) << "n=" << n;
    for (const auto& t : trees) ASSERT_TRUE(is_tree(t));
    EXPECT_EQ(forms(trees).size(), trees.size());
  }
}

TEST(Enumerate, CubicGraphs) {
  // connected or not
  const std::map<int, std::size_t> all = {{4, 1}, {6, 2}, {8, 6}, {10, 21}, {12, 94}};
  const std::map<int, std::size_t> connected = {{4, 1}, {6, 2}, {8, 5}, {10, 19}, {12, 85}};
  for (auto [n, want] : all) {
    auto s = spec_for(n);
    s.constraints.regular = 3;
    EXPECT_EQ(count(s), want) << "n=" << n;
    s.constraints.connected = true;
    EXPECT_EQ(count(s), connected.at(n)) << "n=" << n;
  }
}

TEST(Enumerate, AgreesWithBruteForceUnderConstraints) {
  for (int n = 1; n <= 7; ++n) {
    auto classes = oracle_class(n, [](const Graph&) { return true; });
    auto check = [&](const SearchSpec& s, const std::function<bool(const Graph&)>& keep, const char* label) {
      std::vector<Graph> want;
      for (const auto& g : classes)
        if (keep(g)) want.push_back(g);
      auto got = enumerate_all(s);
      EXPECT_EQ(got.size(), want.size()) << label << " n=" << n;
      EXPECT_EQ(forms(got), forms(want)) << label << " n=" << n;
    };
    check(spec_for(n), [](const Graph&) { return true; }, "all");
    {
      auto s = spec_for(n);
      s.constraints.connected = true;
      check(s, oracle_connected, "connected");
    }
    {
      auto s = spec_for(n);
      s.constraints.bipartite = true;
      check(s, oracle_bipartite, "bipartite");
      s.constraints.connected = true;
      check(s, [](const Graph& g) { return oracle_bipartite(g) && oracle_connected(g); }, "connected bipartite");
    }
    for (int r = 0; r < n; ++r) {
      if ((n * r) % 2) continue;
      auto s = spec_for(n);
      s.constraints.regular = r;
      check(s, [r](const Graph& g) { return oracle_regular(g, r); }, "regular");
    }
    for (int m = 0; m <= n * (n - 1) / 2; m += 2) {
      auto s = spec_for(n);
      s.m = m;
      check(s, [m](const Graph& g) { return g.m() == m; }, "edges");
    }
    if (n >= 3) {
      auto s = spec_for(n);
      s.constraints.complement_cycles = true;
      check(s, [n](const Graph& g) { return oracle_regular(g, n - 3); }, "complement of cycles");
    }
  }
}

TEST(Enumerate, EarlyStopIsNotExhaustive) {
  int seen = 0;
  auto stats = enumerate(spec_for(6), [&](const Graph&) { return ++seen < 10; });
  EXPECT_EQ(seen, 10);
  EXPECT_FALSE(stats.exhausted);
}

TEST(CyclePartitions, CountsAndOrder) {
  for (int n = 0; n <= 40; ++n) {
    auto parts = cycle_partitions(n);
    EXPECT_EQ(static_cast<int>(parts.size()), n < 3 ? 0 : oracle::count_partitions_min3(n)) << "n=" << n;
    for (const auto& p : parts) {
      EXPECT_TRUE(std::is_sorted(p.begin(), p.end()));
      EXPECT_EQ(std::accumulate(p.begin(), p.end(), 0), n);
      EXPECT_GE(p.front(), 3);
    }
    EXPECT_TRUE(std::is_sorted(parts.begin(), parts.end()));
  }
  EXPECT_EQ(cycle_partitions(18).size(), 33U);
}

TEST(CyclePartitions, AnalyticSpectrumMatchesEigensolver) {
  for (int n = 3; n <= 18; ++n)
    for (const auto& parts : cycle_partitions(n)) {
      auto analytic = cycle_partition_spectrum(parts, n);
      auto direct = eigenvalues(make::cycle_union_complement(parts));
      ASSERT_TRUE(spectra_match(analytic, direct, 1e-9)) << "n=" << n;
    }
  std::vector<int> bad = {3, 4};
  EXPECT_THROW(cycle_partition_spectrum(bad, 8), Error);
  std::vector<int> short_part = {2, 5};
  EXPECT_THROW(cycle_partition_spectrum(short_part, 7), Error);
}

TEST(Extremal, AgreesWithBruteForceUpToSeven) {
  for (int n = 1; n <= 7; ++n) {
    auto classes = oracle_class(n, [](const Graph&) { return true; });
    double best = -1;
    for (const auto& g : classes) best = std::max(best, energy(eigenvalues(g)));
    std::vector<Graph> want;
    for (const auto& g : classes)
      if (energy(eigenvalues(g)) > best - 1e-9) want.push_back(g);

    auto r = extremal_energy(spec_for(n));
    ASSERT_TRUE(r.exhausted);
    EXPECT_FALSE(r.empty_class);
    EXPECT_NEAR(r.best.front().energy, best, 1e-9);
    std::vector<Graph> got;
    for (const auto& f : r.best) got.push_back(f.graph);
    EXPECT_EQ(forms(got), forms(want)) << "n=" << n;
  }
}

TEST(Extremal, CompleteGraphIsMaximalUpToSix) {
  for (int n = 2; n <= 6; ++n) {
    auto r = extremal_energy(spec_for(n));
    bool has_complete = false;
    for (const auto& f : r.best) has_complete |= canon::isomorphic(f.graph, make::complete(n));
    EXPECT_TRUE(has_complete) << "n=" << n;
    EXPECT_NEAR(r.best.front().energy, 2.0 * (n - 1), 1e-9);
  }
}

TEST(Extremal, SevenVertexMaximum) {
  auto r = extremal_energy(spec_for(7));
  EXPECT_NEAR(r.best.front().energy, 12, 1e-9);
  std::set<canon::Form> got;
  for (const auto& f : r.best) got.insert(canon::canonical_form(f.graph));
  EXPECT_TRUE(got.count(canon::canonical_form(make::complete(7))));
  EXPECT_TRUE(got.count(canon::canonical_form(graph6::decode("F`~~w"))));
}

TEST(Extremal, PathAndStarAmongTrees) {
  for (int n = 3; n <= 11; ++n) {
    auto s = spec_for(n);
    s.constraints.tree = true;
    auto hi = extremal_energy(s);
    ASSERT_EQ(hi.best.size(), 1U);
    EXPECT_TRUE(canon::isomorphic(hi.best[0].graph, make::path(n))) << "n=" << n;
    s.objective = SearchObjective::min_energy;
    auto lo = extremal_energy(s);
    ASSERT_EQ(lo.best.size(), 1U);
    EXPECT_TRUE(canon::isomorphic(lo.best[0].graph, make::star(n - 1))) << "n=" << n;
    EXPECT_NEAR(lo.best[0].energy, 2 * std::sqrt(n - 1.0), 1e-9);
  }
}

TEST(Extremal, ComplementOfFourAndFiveCycles) {
  auto s = spec_for(18);
  s.constraints.complement_cycles = true;
  auto r = extremal_energy(s);
  ASSERT_TRUE(r.exhausted);
  ASSERT_EQ(r.best.size(), 1U);
  std::vector<int> parts = {4, 4, 5, 5};
  EXPECT_TRUE(canon::isomorphic(r.best[0].graph, make::cycle_union_complement(parts)));
  EXPECT_NEAR(r.best[0].energy, 38.9443, 1e-4);
  EXPECT_EQ(r.graphs_examined, static_cast<std::uint64_t>(oracle::count_partitions_min3(18)));
}

TEST(Extremal, EmptyClass) {
  auto s = spec_for(5);
  s.constraints.regular = 4;
  s.constraints.bipartite = true;
  auto r = extremal_energy(s);
  EXPECT_TRUE(r.exhausted);
  EXPECT_TRUE(r.empty_class);
  EXPECT_TRUE(r.best.empty());
}

TEST(Extremal, WorkerCountDoesNotChangeResult) {
  auto one = spec_for(8);
  auto many = one;
  many.limits.workers = 3;
  auto a = extremal_energy(one);
  auto b = extremal_energy(many);
  ASSERT_EQ(a.best.size(), b.best.size());
  for (std::size_t i = 0; i < a.best.size(); ++i) EXPECT_EQ(a.best[i].graph6, b.best[i].graph6);
  EXPECT_EQ(a.graphs_examined, b.graphs_examined);
  EXPECT_EQ(a.graphs_examined, 12346U);
}

TEST(Budget, NodeLimitAndCancel) {
  auto s = spec_for(8);
  s.limits.max_nodes = 50;
  auto r = extremal_energy(s);
  EXPECT_FALSE(r.exhausted);
  EXPECT_FALSE(r.empty_class);
  EXPECT_LE(r.nodes_visited, 50U);

  s = spec_for(9);
  s.limits.cancel = std::make_shared<std::atomic<bool>>(true);
  r = extremal_energy(s);
  EXPECT_FALSE(r.exhausted);

  std::uint64_t last_nodes = 0;
  int calls = 0;
  s = spec_for(8);
  s.limits.progress = [&](std::uint64_t nodes, std::uint64_t) {
    EXPECT_GE(nodes, last_nodes);
    last_nodes = nodes;
    ++calls;
  };
  r = extremal_energy(s);
  EXPECT_TRUE(r.exhausted);
  EXPECT_GT(calls, 0);
  EXPECT_EQ(last_nodes, r.nodes_visited);
}

TEST(Realize, HeawoodGraph) {
  auto target = eigenvalues(oracle::heawood());
  auto s = spec_for(14);
  s.objective = SearchObjective::realize;
  s.target = target;
  s.constraints.regular = 3;
  s.constraints.bipartite = true;
  s.constraints.connected = true;
  auto r = realize_spectrum(s);
  ASSERT_TRUE(r.exhausted);
  ASSERT_EQ(r.best.size(), 1U);
  EXPECT_TRUE(canon::isomorphic(r.best[0].graph, oracle::heawood()));
  EXPECT_TRUE(spectra_match(eigenvalues(r.best[0].graph), target, 1e-6));
}

TEST(Realize, ClebschComplementFromRoundedSpectrum) {
  // 10, 2^5, -2^10 at four decimals
  auto s = spec_for(16);
  s.objective = SearchObjective::realize;
  std::vector<EigenGroup> groups = {{10, 1}, {2, 5}, {-2, 10}};
  s.target = Spectrum::from_groups(groups);
  s.tol = 5e-5;
  auto r = realize_spectrum(s);
  ASSERT_TRUE(r.exhausted);
  ASSERT_EQ(r.best.size(), 1U);
  EXPECT_TRUE(canon::isomorphic(r.best[0].graph, make::complement(oracle::clebsch())));
  EXPECT_NEAR(r.best[0].energy, 40, 1e-9);
}

TEST(Realize, FastFailOnThirdMoment) {
  auto s = spec_for(10);
  s.m = 30;
  s.objective = SearchObjective::realize;
  std::vector<EigenGroup> groups = {{6, 1}, {1.4415, 3}, {-1.7208, 6}};
  s.target = Spectrum::from_groups(groups);
  s.tol = 5e-5;
  auto r = realize_spectrum(s);
  EXPECT_TRUE(r.certified_absent());
  ASSERT_FALSE(r.fast_fail.empty());
  bool third = false;
  for (const auto& reason : r.fast_fail) third |= reason.rfind("moment-3", 0) == 0;
  EXPECT_TRUE(third);
  EXPECT_EQ(r.graphs_examined, 0U);
}

TEST(Realize, FastFailAcceptsEverySpectrumUpToSeven) {
  for (int n = 1; n <= 7; ++n) {
    enumerate(spec_for(n), [&](const Graph& g) {
      auto s = spec_for(n);
      s.objective = SearchObjective::realize;
      s.target = eigenvalues(g);
      s.tol = 1e-6;
      EXPECT_TRUE(realization_fast_fail(s).empty()) << graph6::encode(g);
      // printed to four decimals
      std::vector<double> rounded;
      for (double x : eigenvalues(g)) rounded.push_back(std::round(x * 1e4) / 1e4);
      s.target = Spectrum(rounded);
      s.tol = 5e-5;
      s.m = g.m();
      EXPECT_TRUE(realization_fast_fail(s).empty()) << graph6::encode(g);
      return true;
    });
  }
}

TEST(Realize, RandomGraphsRecoverTheirOwnSpectrum) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 25; ++trial) {
    int n = 5 + static_cast<int>(rng() % 4);
    auto g = oracle::random_graph(n, 0.5, rng);
    auto s = spec_for(n);
    s.objective = SearchObjective::realize;
    s.target = eigenvalues(g);
    auto r = realize_spectrum(s);
    ASSERT_TRUE(r.exhausted);
    bool found = false;
    for (const auto& f : r.best) {
      EXPECT_TRUE(spectra_match(f.spectrum, s.target, s.tol));
      found |= canon::isomorphic(f.graph, g);
    }
    EXPECT_TRUE(found) << graph6::encode(g);
  }
}

TEST(Realize, CospectralMatesAreAllReported) {
  // K_{1,4} and C4 + K1 share the spectrum 2, 0, 0, 0, -2
  auto s = spec_for(5);
  s.objective = SearchObjective::realize;
  s.target = eigenvalues(make::star(4));
  auto r = realize_spectrum(s);
  ASSERT_EQ(r.best.size(), 2U);
  std::vector<Graph> got = {r.best[0].graph, r.best[1].graph};
  std::vector<Graph> want = {make::star(4), make::disjoint_union(make::cycle(4), Graph(1))};
  EXPECT_EQ(forms(got), forms(want));
  s.constraints.connected = true;
  EXPECT_EQ(realize_spectrum(s).best.size(), 1U);
}

TEST(Realize, WorkerCountDoesNotChangeResult) {
  auto g = make::cycle_union_complement(std::vector<int>{4, 5});
  auto s = spec_for(9);
  s.objective = SearchObjective::realize;
  s.target = eigenvalues(g);
  auto one = realize_spectrum(s);
  s.limits.workers = 2;
  auto two = realize_spectrum(s);
  ASSERT_EQ(one.best.size(), two.best.size());
  for (std::size_t i = 0; i < one.best.size(); ++i) EXPECT_EQ(one.best[i].graph6, two.best[i].graph6);
}

TEST(Search, SpecValidation) {
  EXPECT_EQ(kind_of([] { normalized(spec_for(0)); }), ErrorKind::invalid_argument);
  EXPECT_EQ(kind_of([] { normalized(spec_for(63)); }), ErrorKind::unsupported);
  auto s = spec_for(5);
  s.constraints.regular = 3;
  EXPECT_EQ(kind_of([&] { normalized(s); }), ErrorKind::invalid_argument);
  s = spec_for(5);
  s.constraints.tree = true;
  s.m = 5;
  EXPECT_EQ(kind_of([&] { normalized(s); }), ErrorKind::invalid_argument);
  s = spec_for(5);
  s.m = 11;
  EXPECT_EQ(kind_of([&] { normalized(s); }), ErrorKind::invalid_argument);
  s = spec_for(5);
  s.limits.max_nodes = 0;
  EXPECT_EQ(kind_of([&] { normalized(s); }), ErrorKind::invalid_argument);
  s = spec_for(5);
  s.objective = SearchObjective::realize;
  s.target = Spectrum({1, -1});
  EXPECT_EQ(kind_of([&] { realize_spectrum(s); }), ErrorKind::invalid_argument);
  EXPECT_EQ(kind_of([&] { extremal_energy(s); }), ErrorKind::invalid_argument);

  s = spec_for(6);
  s.constraints.tree = true;
  auto n = normalized(s);
  EXPECT_EQ(n.m, 5);
  EXPECT_TRUE(n.constraints.connected && n.constraints.bipartite);
  s = spec_for(7);
  s.constraints.complement_cycles = true;
  EXPECT_EQ(normalized(s).constraints.regular, 4);
  EXPECT_EQ(normalized(s).m, 14);
}
