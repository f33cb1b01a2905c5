#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "genergy/completion.hpp"
#include "genergy/format.hpp"
#include "genergy/graph6.hpp"
#include "genergy/reference_data.hpp"

namespace genergy::verify {

struct Outcome {
  std::string name;
  bool passed = false;
  std::string detail;
};

namespace detail {

// The third-moment column is printed to six significant figures and then
// padded to four decimals, so either rendering counts as a match.
inline bool third_matches(double value, std::string_view printed) {
  return fixed(value) == printed || fixed(round_significant(value, 6)) == printed;
}

inline std::string row_text(const CompletionCandidate& c) {
  return "p=" + std::to_string(c.p) + " x=" + fixed(c.x) + " y=" + fixed(c.y) + " E=" + fixed(c.energy) +
         " third/6=" + fixed(c.third_moment_over_6) + " " + moment_mark(c);
}

}  // namespace detail

/// Regenerates one completion table and compares it row by row at the
/// printed precision. Rows are paired within each p by ascending x.
inline Outcome check_table(const reference::CompletionTable& table) {
  Outcome out{std::string(table.title), true, ""};
  std::vector<CompletionCandidate> rows;
  try {
    rows = complete_spectrum(table.n, table.m, derive_constants(table.known));
  } catch (const Error& e) {
    out.passed = false;
    out.detail = e.what();
    return out;
  }
  if (rows.size() != table.rows.size()) {
    out.passed = false;
    out.detail = "row count " + std::to_string(rows.size()) + " != " + std::to_string(table.rows.size());
    return out;
  }

  std::map<int, std::vector<CompletionCandidate>> got;
  std::map<int, std::vector<reference::TableRow>> want;
  for (const auto& r : rows) got[r.p].push_back(r);
  for (const auto& r : table.rows) want[r.p].push_back(r);

  int mismatches = 0;
  for (auto& [p, expected] : want) {
    auto& computed = got[p];
    std::sort(expected.begin(), expected.end(),
              [](const auto& a, const auto& b) { return std::stod(std::string(a.x)) < std::stod(std::string(b.x)); });
    std::sort(computed.begin(), computed.end(), [](const auto& a, const auto& b) { return a.x < b.x; });
    if (computed.size() != expected.size()) {
      ++mismatches;
      out.detail += "p=" + std::to_string(p) + ": row count differs; ";
      continue;
    }
    for (std::size_t i = 0; i < expected.size(); ++i) {
      const auto& e = expected[i];
      const auto& c = computed[i];
      bool ok = c.q == e.q && fixed(c.x) == e.x && fixed(c.y) == e.y && fixed(c.energy) == e.energy;
      if (!e.third_over_6.empty()) ok = ok && detail::third_matches(c.third_moment_over_6, e.third_over_6);
      if (e.mark != ' ') ok = ok && moment_mark(c) == e.mark;
      if (!ok) {
        ++mismatches;
        out.detail += "got " + detail::row_text(c) + " want x=" + std::string(e.x) + " y=" + std::string(e.y) +
                      " E=" + std::string(e.energy) + "; ";
      }
    }
  }
  out.passed = mismatches == 0;
  if (out.passed) out.detail = std::to_string(rows.size()) + " rows match";
  return out;
}

inline std::vector<Outcome> check_completion_tables() {
  std::vector<Outcome> out;
  for (const auto& t : reference::completion_tables()) out.push_back(check_table(t));
  return out;
}

/// Decodes the graph6 code and compares order, size, energy and the grouped
/// spectrum against the listed values within tol.
inline Outcome check_maximal_graph(const reference::MaximalEnergyGraph& ref, double tol = 1e-3) {
  Outcome out{"n=" + std::to_string(ref.n) + " " + std::string(ref.graph6), true, ""};
  Graph g;
  try {
    g = graph6::decode(ref.graph6);
  } catch (const Error& e) {
    out.passed = false;
    out.detail = e.what();
    return out;
  }
  auto s = eigenvalues(g);
  double e = energy(s);
  auto groups = s.groups();
  std::vector<std::string> problems;
  if (g.n() != ref.n) problems.push_back("n=" + std::to_string(g.n()));
  if (g.m() != ref.m) problems.push_back("m=" + std::to_string(g.m()));
  if (std::abs(e - ref.energy) > tol) problems.push_back("E=" + fixed(e, 6));
  if (static_cast<int>(groups.size()) != ref.distinct)
    problems.push_back("distinct=" + std::to_string(groups.size()));
  if (groups.size() != ref.spectrum.size()) {
    problems.push_back("spectrum " + spectrum_groups_text(s, 3));
  } else {
    for (std::size_t i = 0; i < groups.size(); ++i)
      if (std::abs(groups[i].value - ref.spectrum[i].value) > tol ||
          groups[i].multiplicity != ref.spectrum[i].multiplicity) {
        problems.push_back("spectrum " + spectrum_groups_text(s, 3));
        break;
      }
  }
  out.passed = problems.empty();
  if (out.passed) {
    out.detail = "m=" + std::to_string(g.m()) + " E=" + fixed(e, 3) + " spectrum " + spectrum_groups_text(s, 3);
  } else {
    for (const auto& p : problems) out.detail += p + "; ";
  }
  return out;
}

inline std::vector<Outcome> check_maximal_graphs(double tol = 1e-3) {
  std::vector<Outcome> out;
  for (const auto& g : reference::maximal_energy_graphs()) out.push_back(check_maximal_graph(g, tol));
  return out;
}

}  // namespace genergy::verify
