#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <span>
#include <vector>

#include "genergy/graph.hpp"

namespace genergy {

/// Golden ratio at full precision.
inline constexpr double kPhi = std::numbers::phi;

inline constexpr double kDefaultGroupTolerance = 1e-6;

struct EigenGroup {
  double value;
  int multiplicity;
};

/// Multiset of real eigenvalues, always held in descending order.
class Spectrum {
 public:
  Spectrum() = default;

  explicit Spectrum(std::vector<double> values) : values_(std::move(values)) {
    std::sort(values_.begin(), values_.end(), std::greater<>());
  }

  /// Expands (value, multiplicity) groups into a spectrum.
  static Spectrum from_groups(std::span<const EigenGroup> groups) {
    std::vector<double> v;
    for (const auto& g : groups) v.insert(v.end(), static_cast<std::size_t>(g.multiplicity), g.value);
    return Spectrum(std::move(v));
  }

  const std::vector<double>& values() const noexcept { return values_; }
  std::size_t size() const noexcept { return values_.size(); }
  bool empty() const noexcept { return values_.empty(); }
  double operator[](std::size_t i) const { return values_[i]; }
  double largest() const { return values_.front(); }
  double smallest() const { return values_.back(); }
  auto begin() const { return values_.begin(); }
  auto end() const { return values_.end(); }

  /// Clusters neighbouring values whose gap is at most tol. The reported
  /// value of a group is the mean of its members.
  std::vector<EigenGroup> groups(double tol = kDefaultGroupTolerance) const {
    std::vector<EigenGroup> out;
    double sum = 0;
    for (std::size_t i = 0; i < values_.size(); ++i) {
      if (i > 0 && values_[i - 1] - values_[i] <= tol) {
        sum += values_[i];
        ++out.back().multiplicity;
        out.back().value = sum / out.back().multiplicity;
      } else {
        sum = values_[i];
        out.push_back({values_[i], 1});
      }
    }
    return out;
  }

 private:
  std::vector<double> values_;
};

inline Eigen::MatrixXd adjacency_matrix(const Graph& g) {
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(g.n(), g.n());
  for (auto [u, v] : g.edges()) {
    a(u, v) = 1.0;
    a(v, u) = 1.0;
  }
  return a;
}

/// Adjacency spectrum via a dense symmetric eigensolve.
inline Spectrum eigenvalues(const Graph& g) {
  if (g.n() == 0) return Spectrum{};
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(adjacency_matrix(g), Eigen::EigenvaluesOnly);
  const auto& ev = solver.eigenvalues();
  return Spectrum(std::vector<double>(ev.data(), ev.data() + ev.size()));
}

inline double energy(const Spectrum& s) {
  double e = 0;
  for (double x : s) e += std::abs(x);
  return e;
}

inline double spectral_moment(const Spectrum& s, int k) {
  if (k < 1) throw Error(ErrorKind::invalid_argument, "moment order must be >= 1");
  double total = 0;
  for (double x : s) total += std::pow(x, k);
  return total;
}

struct Regularity {
  bool regular = false;
  int degree = -1;  // common degree when regular
  /// Spectral criterion: largest eigenvalue equals the average degree 2m/n.
  bool spectral_regular = false;
};

inline Regularity is_regular(const Graph& g, double tol = 1e-8) {
  if (g.n() < 1) throw Error(ErrorKind::invalid_argument, "regularity needs n >= 1");
  auto deg = g.degrees();
  Regularity r;
  r.regular = std::all_of(deg.begin(), deg.end(), [&](int d) { return d == deg.front(); });
  if (r.regular) r.degree = deg.front();
  double average = 2.0 * g.m() / g.n();
  r.spectral_regular = std::abs(eigenvalues(g).largest() - average) <= tol * std::max(1.0, average);
  return r;
}

/// True when the multiset equals its negation within tol.
inline bool is_bipartite_spectral(const Spectrum& s, double tol = kDefaultGroupTolerance) {
  if (!(tol > 0)) throw Error(ErrorKind::invalid_argument, "tolerance must be positive");
  const auto& v = s.values();
  for (std::size_t i = 0, j = v.size(); i < v.size(); ++i)
    if (std::abs(v[i] + v[--j]) > tol) return false;
  return true;
}

/// Spectrum of the complement of a regular graph on n vertices, given the
/// regular graph's spectrum (largest eigenvalue first).
inline Spectrum complement_spectrum_regular(const Spectrum& s, int n) {
  if (s.size() != static_cast<std::size_t>(n))
    throw Error(ErrorKind::invalid_argument, "spectrum length differs from n");
  if (n == 0) return Spectrum{};
  std::vector<double> out;
  out.reserve(s.size());
  out.push_back(n - s.largest() - 1);
  for (std::size_t i = 1; i < s.size(); ++i) out.push_back(-s[i] - 1);
  return Spectrum(std::move(out));
}

/// As above, but rejects a source graph that fails the spectral regularity
/// cross-check.
inline Spectrum complement_spectrum_regular(const Spectrum& s, const Graph& source) {
  auto reg = is_regular(source);
  if (!reg.regular || !reg.spectral_regular)
    throw Error(ErrorKind::invalid_argument, "source graph is not regular");
  return complement_spectrum_regular(s, source.n());
}

namespace detail {

// Values of 2cos(2 pi j / len) that have short closed forms; cos() output
// within 1e-12 of one of these is replaced by it.
inline double snap_closed_form(double v) {
  static const double kForms[] = {
      -2, -1, 0, 1, 2, kPhi, -kPhi, kPhi - 1, 1 - kPhi, std::numbers::sqrt2, -std::numbers::sqrt2,
      std::numbers::sqrt3, -std::numbers::sqrt3,
  };
  for (double f : kForms)
    if (std::abs(v - f) <= 1e-12) return f;
  return v;
}

}  // namespace detail

/// 2cos(2 pi j / len), j = 1..len.
inline Spectrum cycle_spectrum(int len) {
  if (len < 3) throw Error(ErrorKind::invalid_argument, "cycle length must be >= 3, got " + std::to_string(len));
  std::vector<double> v;
  v.reserve(static_cast<std::size_t>(len));
  for (int j = 1; j <= len; ++j) v.push_back(detail::snap_closed_form(2.0 * std::cos(2.0 * std::numbers::pi * j / len)));
  return Spectrum(std::move(v));
}

/// Upper bound (n/2)(1 + sqrt n) on the energy of any n-vertex graph.
inline double koolen_moulton_bound(int n) {
  if (n < 1) throw Error(ErrorKind::invalid_argument, "bound needs n >= 1");
  return 0.5 * n * (1.0 + std::sqrt(static_cast<double>(n)));
}

inline bool is_near_integer(double v, double tol) { return std::abs(v - std::round(v)) <= tol; }

struct EnergyReport {
  double energy = 0;
  double moment1 = 0;
  double moment2 = 0;
  double moment3 = 0;
  double triangle_count = 0;  // moment3 / 6
  bool triangle_count_integral = false;
  double km_bound = 0;
  double km_slack = 0;
};

inline EnergyReport energy_report(const Spectrum& s, double integrality_tol = 1e-6) {
  EnergyReport r;
  r.energy = energy(s);
  r.moment1 = spectral_moment(s, 1);
  r.moment2 = spectral_moment(s, 2);
  r.moment3 = spectral_moment(s, 3);
  r.triangle_count = r.moment3 / 6.0;
  r.triangle_count_integral = is_near_integer(r.triangle_count, integrality_tol);
  if (!s.empty()) {
    r.km_bound = koolen_moulton_bound(static_cast<int>(s.size()));
    r.km_slack = r.km_bound - r.energy;
  }
  return r;
}

inline EnergyReport energy_report(const Graph& g) { return energy_report(eigenvalues(g)); }

/// Entrywise comparison of two descending spectra.
inline bool spectra_match(const Spectrum& a, const Spectrum& b, double tol) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (std::abs(a[i] - b[i]) > tol) return false;
  return true;
}

}  // namespace genergy
