#include <gtest/gtest.h>

#include "genergy/completion.hpp"
#include "genergy/reference_data.hpp"
#include "genergy/verify.hpp"
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

void expect_residuals(int n, int m, const KnownFamily& k, const std::vector<CompletionCandidate>& rows) {
  const int unknowns = n - static_cast<int>(k.size());
  const double scale = std::max(1.0, 2.0 * m);
  for (const auto& c : rows) {
    EXPECT_EQ(c.p + c.q, unknowns);
    EXPECT_NEAR(c.p * c.x + c.q * c.y, -k.c, 1e-9 * scale);
    EXPECT_NEAR(c.p * c.x * c.x + c.q * c.y * c.y, 2.0 * m - k.d, 1e-9 * scale);
    EXPECT_NEAR(c.energy, c.p * std::abs(c.x) + c.q * std::abs(c.y) + k.c_plus - k.c_minus, 1e-9 * scale);
  }
}

}  // namespace

TEST(Completion, DerivedConstants) {
  auto k = derive_constants({15, -3, -3, -3});
  EXPECT_EQ(k.size(), 4U);
  EXPECT_DOUBLE_EQ(k.c_plus, 15);
  EXPECT_DOUBLE_EQ(k.c_minus, -9);
  EXPECT_DOUBLE_EQ(k.c, 6);
  EXPECT_DOUBLE_EQ(k.d, 252);
  auto empty = derive_constants(std::span<const double>{});
  EXPECT_EQ(empty.c, 0);
  EXPECT_EQ(empty.d, 0);
}

TEST(Completion, ReferenceTablesAtPrintedPrecision) {
  for (const auto& t : reference::completion_tables()) {
    auto outcome = verify::check_table(t);
    EXPECT_TRUE(outcome.passed) << outcome.name << ": " << outcome.detail;
  }
}

TEST(Completion, RowOrderAndPassMarks) {
  auto rows = complete_spectrum(18, 135, derive_constants({15}));
  ASSERT_EQ(rows.size(), 16U);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    EXPECT_EQ(rows[i].p, static_cast<int>(i / 2 + 1));
    if (i % 2 == 1) {
      EXPECT_LT(rows[i].x, rows[i - 1].x);
    }
  }
  int passes = 0;
  for (const auto& r : rows)
    if (r.passes_moment_test) {
      ++passes;
      EXPECT_EQ(r.p, 5);
      EXPECT_NEAR(r.x, -3, 1e-12);
      EXPECT_NEAR(r.y, 0, 1e-12);
      EXPECT_NEAR(r.energy, 30, 1e-9);
    }
  EXPECT_EQ(passes, 1);
}

TEST(Completion, StarFromSimpleEigenvalueThree) {
  auto k = derive_constants({3});
  auto rows = complete_spectrum(10, 9, k);
  const auto& first = rows[1];
  ASSERT_EQ(first.p, 1);
  EXPECT_NEAR(first.x, -3, 1e-12);
  EXPECT_NEAR(first.y, 0, 1e-12);
  EXPECT_TRUE(first.passes_moment_test);
  EXPECT_TRUE(spectra_match(assemble_spectrum(k, first), eigenvalues(make::star(9)), 1e-9));
}

TEST(Completion, ResidualsOnReferenceAndRandomInputs) {
  for (const auto& t : reference::completion_tables()) {
    auto k = derive_constants(t.known);
    expect_residuals(t.n, t.m, k, complete_spectrum(t.n, t.m, k));
  }
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> val(-4, 4);
  int checked = 0;
  for (int trial = 0; trial < 500; ++trial) {
    int n = 3 + static_cast<int>(rng() % 30);
    int m = 1 + static_cast<int>(rng() % (n * (n - 1) / 2));
    std::vector<double> known(rng() % static_cast<std::size_t>(n - 1));
    for (auto& v : known) v = val(rng);
    auto k = derive_constants(known);
    std::vector<CompletionCandidate> rows;
    try {
      rows = complete_spectrum(n, m, k, {.full_range = true});
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::infeasible);
      continue;
    }
    expect_residuals(n, m, k, rows);
    ++checked;
  }
  EXPECT_GT(checked, 100);
}

TEST(Completion, RootsAgreeWithBisection) {
  for (const auto& t : reference::completion_tables()) {
    auto k = derive_constants(t.known);
    auto rows = complete_spectrum(t.n, t.m, k);
    for (std::size_t i = 0; i < rows.size(); i += 2) {
      const auto& a = rows[i];
      auto roots = oracle::completion_x_roots(a.p, a.q, k.c, 2.0 * t.m - k.d);
      ASSERT_EQ(roots.size(), 2U);
      std::vector<double> got = {rows[i].x, rows[i + 1].x};
      std::sort(got.begin(), got.end());
      EXPECT_NEAR(got[0], roots[0], 1e-9);
      EXPECT_NEAR(got[1], roots[1], 1e-9);
    }
  }
}

TEST(Completion, HalfRangeSufficesBySymmetry) {
  auto k = derive_constants({15, -3, -3, -3});
  auto half = complete_spectrum(18, 135, k);
  auto full = complete_spectrum(18, 135, k, {.full_range = true});
  const int unknowns = 14;
  EXPECT_EQ(full.size(), 2U * (unknowns - 1));
  for (const auto& f : full) {
    if (f.p <= unknowns / 2) continue;
    // (p, q, x, y) with p > |J|/2 is (q, p, y, x) from the half range
    bool mirrored = false;
    for (const auto& h : half)
      if (h.p == f.q && std::abs(h.x - f.y) < 1e-9 && std::abs(h.y - f.x) < 1e-9) mirrored = true;
    EXPECT_TRUE(mirrored) << "p=" << f.p << " x=" << f.x;
  }
}

TEST(Completion, DiscriminantSignIndependentOfP) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 300; ++trial) {
    int n = 4 + static_cast<int>(rng() % 12);
    int m = 1 + static_cast<int>(rng() % (n * (n - 1) / 2));
    std::vector<double> known(1 + rng() % 2);
    for (auto& v : known) v = std::uniform_real_distribution<double>(-n, n)(rng);
    auto k = derive_constants(known);
    const int unknowns = n - static_cast<int>(known.size());
    const double rest = 2.0 * m - k.d;
    int with_roots = 0;
    for (int p = 1; p < unknowns; ++p)
      with_roots += oracle::completion_x_roots(p, unknowns - p, k.c, rest).empty() ? 0 : 1;
    EXPECT_TRUE(with_roots == 0 || with_roots == unknowns - 1);
  }
}

TEST(Completion, Errors) {
  auto k = derive_constants({3});
  EXPECT_EQ(kind_of([&] { complete_spectrum(10, 0, k); }), ErrorKind::invalid_argument);
  EXPECT_EQ(kind_of([&] { complete_spectrum(2, 1, k); }), ErrorKind::infeasible);
  EXPECT_EQ(kind_of([&] { complete_spectrum(10, 4, k); }), ErrorKind::infeasible);  // D = 9 > 2m
  // |J| (2m - D) - C^2 = 2 * 0 - 4 < 0
  EXPECT_EQ(kind_of([&] { complete_spectrum(4, 1, derive_constants({1, 1})); }), ErrorKind::infeasible);
}

TEST(Completion, CoincidentRootsForCompleteGraph) {
  // K4: x1 = 3 forces the remaining three eigenvalues to -1
  auto rows = complete_spectrum(4, 6, derive_constants({3}));
  ASSERT_EQ(rows.size(), 1U);
  EXPECT_TRUE(rows[0].coincident);
  EXPECT_NEAR(rows[0].x, -1, 1e-12);
  EXPECT_NEAR(rows[0].y, -1, 1e-12);
  EXPECT_TRUE(rows[0].passes_moment_test);
  EXPECT_NEAR(rows[0].energy, 6, 1e-12);
}

TEST(Completion, TwoVertexTable) {
  auto rows = complete_spectrum(2, 1, derive_constants(std::span<const double>{}));
  ASSERT_EQ(rows.size(), 2U);
  auto k = derive_constants(std::span<const double>{});
  EXPECT_TRUE(spectra_match(assemble_spectrum(k, rows[0]), Spectrum({1, -1}), 1e-12));
  EXPECT_TRUE(spectra_match(assemble_spectrum(k, rows[1]), Spectrum({1, -1}), 1e-12));
}

TEST(Completion, FlagsAndCollisions) {
  auto k = derive_constants({15, -3, -3, -3});
  auto rows = complete_spectrum(18, 135, k);
  const auto& pass = rows[3];  // p=2, x=-3, y=0
  ASSERT_EQ(pass.p, 2);
  EXPECT_TRUE(pass.x_collides_with_known);
  EXPECT_FALSE(pass.y_collides_with_known);
  EXPECT_TRUE(pass.sign_split);
  EXPECT_FALSE(pass.coincident);
  auto neg = complete_spectrum(18, 135, derive_constants({15}));
  EXPECT_TRUE(neg[0].sign_split);   // 4.5854, -1.2241
  EXPECT_FALSE(neg[1].sign_split);  // -6.3501, -0.5406
}

TEST(Completion, ThirdMomentTest) {
  auto k = derive_constants({6});
  CompletionCandidate c{.p = 4, .q = 5, .x = 1, .y = -2};
  auto t = third_moment_test(c, k);
  EXPECT_NEAR(t.value, 30, 1e-12);
  EXPECT_TRUE(t.pass);
  c = {.p = 3, .q = 6, .x = 1.4415, .y = -1.7208};
  EXPECT_FALSE(third_moment_test(c, k).pass);
  EXPECT_THROW(third_moment_test(c, k, 0), Error);
  // negative integers fail
  CompletionCandidate neg{.p = 1, .q = 1, .x = -1.8171205928321397, .y = 0};
  EXPECT_FALSE(third_moment_test(neg, derive_constants(std::span<const double>{})).pass);
}

TEST(Completion, BestCandidates) {
  auto rows = complete_spectrum(18, 135, derive_constants({15, -3, -3, -3, kPhi - 1, kPhi - 1, kPhi - 1, kPhi - 1,
                                                          -kPhi, -kPhi, -kPhi, -kPhi}));
  auto best = best_candidates(rows, CandidateFilter::all, Objective::max);
  EXPECT_EQ(best.front().p, 2);
  EXPECT_NEAR(best.front().energy, 38.9443, 1e-4);
  auto pass = best_candidates(rows, CandidateFilter::moment_pass_only, Objective::max);
  ASSERT_EQ(pass.size(), 1U);
  EXPECT_NEAR(pass.front().x, 1, 1e-12);
  auto low = best_candidates(rows, CandidateFilter::all, Objective::min);
  EXPECT_NEAR(low.front().energy, 35.8273, 1e-4);
  // the two p=7 rows share E = 38.6969
  auto ties = complete_spectrum(18, 135, derive_constants({15, -3, -3, -3}));
  auto ordered = best_candidates(ties, CandidateFilter::all, Objective::max);
  EXPECT_EQ(kind_of([] { best_candidates({}, CandidateFilter::all, Objective::max); }), ErrorKind::invalid_argument);
  auto none = complete_spectrum(10, 30, derive_constants({6}));
  none.erase(none.begin() + 6, none.end());
  EXPECT_EQ(kind_of([&] { best_candidates(none, CandidateFilter::moment_pass_only, Objective::max); }),
            ErrorKind::not_found);
  for (std::size_t i = 1; i < ordered.size(); ++i) {
    EXPECT_GE(ordered[i - 1].energy + 1e-9, ordered[i].energy);
    if (std::abs(ordered[i - 1].energy - ordered[i].energy) <= 1e-9 && ordered[i - 1].p == ordered[i].p) {
      EXPECT_GT(ordered[i - 1].x, ordered[i].x);
    }
  }
}
