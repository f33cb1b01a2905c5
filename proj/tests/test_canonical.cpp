#include <gtest/gtest.h>

#include <map>
#include <set>

#include "genergy/canonical.hpp"
#include "genergy/graph6.hpp"
#include "oracles.hpp"

using namespace genergy;

TEST(Canonical, FormsMatchBruteForceClassesUpToSix) {
  for (int n = 1; n <= 6; ++n) {
    auto perms = oracle::slot_permutations(n);
    std::set<canon::Form> forms;
    std::set<std::uint64_t> classes;
    const std::uint64_t total = std::uint64_t{1} << (n * (n - 1) / 2);
    std::map<std::uint64_t, canon::Form> form_of_class;
    for (std::uint64_t mask = 0; mask < total; ++mask) {
      auto g = oracle::from_mask(n, mask);
      auto form = canon::canonical_form(g);
      auto cls = oracle::min_mask(g, perms);
      auto [it, inserted] = form_of_class.emplace(cls, form);
      ASSERT_EQ(it->second, form) << "n=" << n << " mask=" << mask;
      forms.insert(form);
      classes.insert(cls);
    }
    EXPECT_EQ(forms.size(), classes.size()) << "n=" << n;
  }
}

TEST(Canonical, InvariantUnderRelabeling) {
  std::mt19937_64 rng(11);
  std::vector<Graph> graphs = {oracle::petersen(), oracle::heawood(), oracle::clebsch(),
                               make::complement(oracle::clebsch()), make::cycle(17), make::complete_bipartite(6, 7),
                               make::copies(make::cycle(5), 4), make::line_graph(make::complete(6))};
  for (int i = 0; i < 40; ++i) graphs.push_back(oracle::random_graph(5 + static_cast<int>(rng() % 40), 0.3, rng));
  for (const auto& g : graphs) {
    auto form = canon::canonical_form(g);
    for (int t = 0; t < 5; ++t) {
      auto h = oracle::relabel(g, oracle::random_permutation(g.n(), rng));
      ASSERT_EQ(canon::canonical_form(h), form) << graph6::encode(g);
    }
    EXPECT_TRUE(canon::isomorphic(canon::canonical_graph(g), g));
  }
}

TEST(Canonical, DistinguishesNonIsomorphic) {
  // same degree sequence, different graphs
  EXPECT_FALSE(canon::isomorphic(make::cycle(6), make::copies(make::cycle(3), 2)));
  std::vector<int> a = {4, 5}, b = {3, 3, 3};
  EXPECT_FALSE(canon::isomorphic(make::cycle_union(a), make::cycle_union(b)));
  EXPECT_FALSE(canon::isomorphic(oracle::petersen(), make::complement(oracle::petersen())));
  EXPECT_TRUE(canon::isomorphic(make::complement(oracle::petersen()), make::line_graph(make::complete(5))));
}

TEST(Canonical, OrbitsAndLabeling) {
  auto lab = canon::canonical_labeling(make::star(5));
  EXPECT_EQ(lab.orbit[0], 0);
  for (int v = 1; v <= 5; ++v) EXPECT_EQ(lab.orbit[static_cast<std::size_t>(v)], 1);
  std::vector<int> sorted = lab.order;
  std::sort(sorted.begin(), sorted.end());
  for (int i = 0; i < 6; ++i) EXPECT_EQ(sorted[static_cast<std::size_t>(i)], i);

  auto p = canon::canonical_labeling(oracle::petersen());
  for (int v : p.orbit) EXPECT_EQ(v, 0);  // vertex-transitive
}

TEST(Canonical, MaximalSevenVertexGraphs) {
  EXPECT_TRUE(canon::isomorphic(graph6::decode("F~~fG"), graph6::decode("F`~~w")));
  EXPECT_TRUE(oracle::isomorphic(graph6::decode("F~~fG"), graph6::decode("F`~~w")));
}
