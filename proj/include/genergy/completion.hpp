#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <vector>

#include "genergy/spectrum.hpp"

namespace genergy {

/// A fixed part of the spectrum together with the sums the completion needs.
struct KnownFamily {
  std::vector<double> values;
  double c_plus = 0;   // sum of the non-negative members
  double c_minus = 0;  // sum of the negative members
  double c = 0;        // sum of all members
  double d = 0;        // sum of squares
  double cubes = 0;    // sum of cubes

  std::size_t size() const noexcept { return values.size(); }
};

inline KnownFamily derive_constants(std::span<const double> values) {
  KnownFamily k;
  k.values.assign(values.begin(), values.end());
  for (double v : values) {
    (v >= 0 ? k.c_plus : k.c_minus) += v;
    k.c += v;
    k.d += v * v;
    k.cubes += v * v * v;
  }
  return k;
}

inline KnownFamily derive_constants(std::initializer_list<double> values) {
  return derive_constants(std::span<const double>(values.begin(), values.size()));
}

/// One solution (p, q, x, y) of the two moment constraints for the unknown
/// part of the spectrum.
struct CompletionCandidate {
  int p = 0;
  int q = 0;
  double x = 0;
  double y = 0;
  double energy = 0;
  double third_moment_over_6 = 0;
  bool passes_moment_test = false;
  /// {x, y} holds one non-negative and one negative value.
  bool sign_split = false;
  /// Zero discriminant: x == y, emitted once.
  bool coincident = false;
  bool x_collides_with_known = false;
  bool y_collides_with_known = false;
};

struct MomentTest {
  double value = 0;
  bool pass = false;
};

inline constexpr double kDefaultMomentTolerance = 1e-6;

/// (p x^3 + q y^3 + sum k^3) / 6 must be a non-negative integer.
inline MomentTest third_moment_test(const CompletionCandidate& cand, const KnownFamily& k,
                                    double tol = kDefaultMomentTolerance) {
  if (!(tol > 0)) throw Error(ErrorKind::invalid_argument, "tolerance must be positive");
  MomentTest t;
  t.value = (cand.p * cand.x * cand.x * cand.x + cand.q * cand.y * cand.y * cand.y + k.cubes) / 6.0;
  double nearest = std::round(t.value);
  t.pass = std::abs(t.value - nearest) <= tol && nearest >= 0;
  return t;
}

struct CompletionOptions {
  double moment_tol = kDefaultMomentTolerance;
  /// Run p over 1..|J|-1 instead of the half range 1..floor(|J|/2).
  bool full_range = false;
};

/// Enumerates every completion of k by two values x, y of multiplicities
/// p, q with p + q = n - |K|, p x + q y = -C and p x^2 + q y^2 = 2m - D.
///
/// Eliminating y leaves p(p+q) x^2 + 2Cp x + C^2 - q(2m - D) = 0, whose
/// discriminant is 4pq(|J|(2m - D) - C^2): its sign does not depend on p, so
/// either every p yields two roots, every p yields one, or none do. Rows are
/// ordered by p, then by x descending.
inline std::vector<CompletionCandidate> complete_spectrum(int n, int m, const KnownFamily& k,
                                                          const CompletionOptions& opts = {}) {
  if (m <= 0) throw Error(ErrorKind::invalid_argument, "edge count must be positive");
  const int unknowns = n - static_cast<int>(k.size());
  if (unknowns < 2)
    throw Error(ErrorKind::infeasible,
                "no unknowns: |K|=" + std::to_string(k.size()) + " leaves fewer than two free eigenvalues of n=" +
                    std::to_string(n));
  const double rest = 2.0 * m - k.d;  // 2m - D
  if (rest < 0)
    throw Error(ErrorKind::infeasible, "sum of squares of K exceeds 2m (D=" + std::to_string(k.d) + ")");

  const double scale = std::max({1.0, unknowns * rest, k.c * k.c});
  double disc = unknowns * rest - k.c * k.c;
  bool coincident = false;
  if (std::abs(disc) <= 1e-12 * scale) {
    disc = 0;
    coincident = true;
  }
  if (disc < 0)
    throw Error(ErrorKind::infeasible, "no real completion: 2m - D < C^2/(n - |K|)");

  auto annotate = [&](int p, int q, double x, double y) {
    CompletionCandidate c;
    c.p = p;
    c.q = q;
    c.x = x;
    c.y = y;
    c.energy = p * std::abs(x) + q * std::abs(y) + k.c_plus - k.c_minus;
    auto t = third_moment_test(c, k, opts.moment_tol);
    c.third_moment_over_6 = t.value;
    c.passes_moment_test = t.pass;
    c.sign_split = (x >= 0) != (y >= 0);
    c.coincident = coincident;
    auto collides = [&](double v) {
      return std::any_of(k.values.begin(), k.values.end(), [&](double kv) { return std::abs(kv - v) <= 1e-9; });
    };
    c.x_collides_with_known = collides(x);
    c.y_collides_with_known = collides(y);
    return c;
  };

  std::vector<CompletionCandidate> out;
  const int last_p = opts.full_range ? unknowns - 1 : unknowns / 2;
  for (int p = 1; p <= last_p; ++p) {
    const int q = unknowns - p;
    if (coincident) {
      double v = -k.c / unknowns;
      out.push_back(annotate(p, q, v, v));
      continue;
    }
    // x = (-C ± sqrt(q/p * disc)) / |J|,  y = (-C ∓ sqrt(p/q * disc)) / |J|
    const double sx = std::sqrt(static_cast<double>(q) / p * disc);
    const double sy = std::sqrt(static_cast<double>(p) / q * disc);
    out.push_back(annotate(p, q, (-k.c + sx) / unknowns, (-k.c - sy) / unknowns));
    out.push_back(annotate(p, q, (-k.c - sx) / unknowns, (-k.c + sy) / unknowns));
  }
  return out;
}

/// K together with x^p and y^q.
inline Spectrum assemble_spectrum(const KnownFamily& k, const CompletionCandidate& cand) {
  std::vector<double> v = k.values;
  v.insert(v.end(), static_cast<std::size_t>(cand.p), cand.x);
  v.insert(v.end(), static_cast<std::size_t>(cand.q), cand.y);
  return Spectrum(std::move(v));
}

enum class CandidateFilter { all, moment_pass_only };
enum class Objective { max, min };

/// Sorts by energy (descending for max, ascending for min); ties within
/// 1e-9 go to the smaller p, then the larger x.
inline std::vector<CompletionCandidate> best_candidates(std::span<const CompletionCandidate> cands,
                                                        CandidateFilter filter, Objective objective) {
  if (cands.empty()) throw Error(ErrorKind::invalid_argument, "empty candidate list");
  std::vector<CompletionCandidate> out;
  for (const auto& c : cands)
    if (filter == CandidateFilter::all || c.passes_moment_test) out.push_back(c);
  if (out.empty()) throw Error(ErrorKind::not_found, "no candidate passes the third-moment filter");
  std::stable_sort(out.begin(), out.end(), [&](const auto& a, const auto& b) {
    if (std::abs(a.energy - b.energy) > 1e-9)
      return objective == Objective::max ? a.energy > b.energy : a.energy < b.energy;
    if (a.p != b.p) return a.p < b.p;
    return a.x > b.x;
  });
  return out;
}

}  // namespace genergy
