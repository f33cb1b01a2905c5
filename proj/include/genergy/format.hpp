#pragma once

#include <cmath>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include "genergy/completion.hpp"

namespace genergy {

/// Fixed-point rendering; a value that rounds to zero prints without a sign.
inline std::string fixed(double v, int decimals = 4) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  std::string s = buf;
  if (s.front() == '-' && s.find_first_not_of("-0.") == std::string::npos) s.erase(0, 1);
  return s;
}

/// Rounds to the given number of significant digits.
inline double round_significant(double v, int digits) {
  if (v == 0 || !std::isfinite(v)) return v;
  const double scale = std::pow(10.0, digits - 1 - static_cast<int>(std::floor(std::log10(std::abs(v)))));
  return std::round(v * scale) / scale;
}

/// Symbolic form of v when it is an integer or a + b*r with |b| = 1 and r
/// one of phi, sqrt(2), sqrt(3); empty otherwise. The result parses back
/// through parse_value.
inline std::string exact_form(double v, double tol = 1e-12) {
  if (!std::isfinite(v) || std::abs(v) > 1e6) return {};
  const double slack = tol * std::max(1.0, std::abs(v));
  auto integer = [&](double x, long& out) {
    out = std::lround(x);
    return std::abs(x - static_cast<double>(out)) <= slack;
  };
  long a = 0;
  if (integer(v, a)) return std::to_string(a);
  const std::pair<double, const char*> roots[] = {
      {(1.0 + std::sqrt(5.0)) / 2.0, "phi"}, {std::sqrt(2.0), "sqrt(2)"}, {std::sqrt(3.0), "sqrt(3)"}};
  for (auto [r, name] : roots)
    for (int b : {1, -1}) {
      if (!integer(v - b * r, a)) continue;
      const std::string base = name;
      if (a == 0) return b == 1 ? base : "-" + base;
      if (b == 1) return base + (a > 0 ? "+" : "") + std::to_string(a);
      if (a > 0) return std::to_string(a) + "-" + base;
      return "-" + base + std::to_string(a);
    }
  return {};
}

inline char moment_mark(const CompletionCandidate& c) { return c.passes_moment_test ? '+' : '-'; }

/// Column layout p, q, x, y, E, third moment / 6, test mark.
inline std::string candidate_table(const std::vector<CompletionCandidate>& rows) {
  std::ostringstream out;
  char line[160];
  std::snprintf(line, sizeof line, "%3s %3s %10s %10s %10s %12s %s\n", "p", "q", "x", "y", "E", "third/6", "test");
  out << line;
  for (const auto& c : rows) {
    std::snprintf(line, sizeof line, "%3d %3d %10s %10s %10s %12s %c%s\n", c.p, c.q, fixed(c.x).c_str(),
                  fixed(c.y).c_str(), fixed(c.energy).c_str(), fixed(c.third_moment_over_6).c_str(), moment_mark(c),
                  c.coincident ? " (coincident)" : "");
    out << line;
  }
  return out.str();
}

inline std::string spectrum_groups_text(const Spectrum& s, int decimals = 4) {
  std::string out;
  for (const auto& g : s.groups()) {
    if (!out.empty()) out += ", ";
    out += fixed(g.value, decimals);
    if (g.multiplicity > 1) out += "^" + std::to_string(g.multiplicity);
  }
  return out;
}

}  // namespace genergy
