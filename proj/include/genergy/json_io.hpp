#pragma once

#include <json.hpp>

#include "genergy/completion.hpp"
#include "genergy/format.hpp"
#include "genergy/search.hpp"

namespace genergy {

using json = nlohmann::json;

/// exact_form(v) as a string, or null when v has no recognized closed form.
inline json exact_json(double v) {
  auto s = exact_form(v);
  return s.empty() ? json(nullptr) : json(s);
}

inline json exact_list_json(const std::vector<double>& values) {
  json out = json::array();
  for (double v : values) out.push_back(exact_json(v));
  return out;
}

inline json groups_json(const Spectrum& s) {
  json out = json::array();
  for (const auto& g : s.groups())
    out.push_back({{"value", g.value}, {"multiplicity", g.multiplicity}, {"exact", exact_json(g.value)}});
  return out;
}

inline json known_json(const KnownFamily& k) {
  return {{"values", k.values}, {"values_exact", exact_list_json(k.values)},
          {"size", k.size()},   {"c_plus", k.c_plus},
          {"c_minus", k.c_minus}, {"c", k.c},
          {"d", k.d}};
}

inline json candidate_json(const CompletionCandidate& c) {
  return {
      {"p", c.p},
      {"q", c.q},
      {"x", c.x},
      {"y", c.y},
      {"energy", c.energy},
      {"third_moment_over_6", c.third_moment_over_6},
      {"passes_moment_test", c.passes_moment_test},
      {"sign_split", c.sign_split},
      {"coincident", c.coincident},
      {"x_collides_with_known", c.x_collides_with_known},
      {"y_collides_with_known", c.y_collides_with_known},
      {"display",
       {{"x", fixed(c.x)},
        {"y", fixed(c.y)},
        {"x_exact", exact_json(c.x)},
        {"y_exact", exact_json(c.y)},
        {"energy", fixed(c.energy)},
        {"third_moment_over_6", fixed(c.third_moment_over_6)},
        {"mark", std::string(1, moment_mark(c))}}},
  };
}

inline json found_graph_json(const FoundGraph& f) {
  return {{"graph6", f.graph6},
          {"n", f.graph.n()},
          {"m", f.graph.m()},
          {"energy", f.energy},
          {"energy_display", fixed(f.energy)},
          {"spectrum", f.spectrum.values()},
          {"groups", groups_json(f.spectrum)}};
}

/// Realization: "found", "certified-absent" or "not-certified".
/// Extremal search: "optimal", "empty-class" or "not-certified"; a stopped
/// extremal search reports its best graphs so far without certifying them.
inline std::string search_status(const SearchResult& r, bool extremal = false) {
  if (extremal) {
    if (!r.exhausted) return "not-certified";
    return r.best.empty() ? "empty-class" : "optimal";
  }
  if (!r.best.empty()) return "found";
  return r.exhausted ? "certified-absent" : "not-certified";
}

inline json search_result_json(const SearchResult& r, bool extremal = false) {
  json graphs = json::array();
  for (const auto& f : r.best) graphs.push_back(found_graph_json(f));
  return {{"status", search_status(r, extremal)}, {"exhausted", r.exhausted},
          {"empty_class", r.empty_class},       {"graphs_examined", r.graphs_examined},
          {"nodes_visited", r.nodes_visited},   {"fast_fail", r.fast_fail},
          {"graphs", graphs}};
}

inline ClassConstraints constraints_from_json(const json& j) {
  ClassConstraints c;
  if (j.is_null()) return c;
  c.connected = j.value("connected", false);
  c.bipartite = j.value("bipartite", false);
  c.tree = j.value("tree", false);
  c.complement_cycles = j.value("complement_cycles", false);
  if (j.contains("regular") && !j["regular"].is_null()) c.regular = j["regular"].get<int>();
  return c;
}

inline json constraints_json(const ClassConstraints& c) {
  json j = {{"connected", c.connected},
            {"bipartite", c.bipartite},
            {"tree", c.tree},
            {"complement_cycles", c.complement_cycles}};
  j["regular"] = c.regular ? json(*c.regular) : json(nullptr);
  return j;
}

}  // namespace genergy
