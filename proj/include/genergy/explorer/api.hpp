#pragma once

#include <map>
#include <regex>
#include <string>

#include "genergy/explorer/jobs.hpp"
#include "genergy/explorer/session.hpp"
#include "genergy/format.hpp"

// After Eigen: <resolv.h>, pulled in by httplib, defines _res as a macro.
#include <httplib.h>

namespace genergy::explorer {

struct Response {
  int status = 200;
  json body;
};

inline int http_status(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::invalid_argument: return 400;
    case ErrorKind::format: return 400;
    case ErrorKind::unsupported: return 400;
    case ErrorKind::not_found: return 404;
    case ErrorKind::infeasible: return 422;
    case ErrorKind::budget_exhausted: return 409;
  }
  return 500;
}

inline json error_body(const std::string& kind, const std::string& message) {
  return {{"error", {{"kind", kind}, {"message", message}}}};
}

inline json candidate_table_json(const Session& s, std::size_t index) {
  const auto& t = s.candidates(index);
  json rows = json::array();
  for (const auto& c : t.rows) rows.push_back(candidate_json(c));
  json j = {{"session", s.id()},
            {"snapshot", index},
            {"n", s.n()},
            {"m", s.m()},
            {"known", known_json(t.known)},
            {"unknowns", s.n() - static_cast<int>(t.known.size())},
            {"feasible", t.feasible},
            {"rows", rows},
            {"text", candidate_table(t.rows)}};
  j["reason"] = t.feasible ? json(nullptr) : json(t.reason);
  return j;
}

/// Suggested motifs for the current snapshot with the values each would add
/// and whether adding them keeps K feasible. Nothing is applied.
inline json motif_suggestions(const Session& s) {
  json out = json::array();
  const auto& known = s.current().known;
  for (int len = 3; len <= std::min(s.n(), 8); ++len) {
    for (bool component : {false, true}) {
      Motif m;
      m.kind = Motif::Kind::cycle_in_complement;
      m.length = len;
      m.component_eigenvalue = component;
      auto values = m.contributed();
      auto extended = known;
      extended.insert(extended.end(), values.begin(), values.end());
      json display = json::array();
      for (double v : values) display.push_back(fixed(v));
      std::string reason;
      try {
        check_feasible(s.n(), s.m(), extended);
      } catch (const Error& e) {
        reason = e.what();
      }
      json item = {{"motif", motif_json(m)},
                   {"label", m.label()},
                   {"values", values},
                   {"values_display", display},
                   {"values_exact", exact_list_json(values)},
                   {"feasible", reason.empty()}};
      item["reason"] = reason.empty() ? json(nullptr) : json(reason);
      out.push_back(item);
    }
  }
  return out;
}

/// Routes REST requests to the session store and job registry. handle() is
/// independent of the HTTP server so it can be exercised directly.
class ExplorerApi {
 public:
  explicit ExplorerApi(SessionStore& store) : store_(store) {}

  Response handle(const std::string& method, const std::string& path, const std::string& body,
                  const std::map<std::string, std::string>& query = {}) {
    try {
      json req = body.empty() ? json::object() : json::parse(body);
      return route(method, path, req, query);
    } catch (const json::parse_error& e) {
      return {400, error_body("format", std::string("request body is not valid JSON: ") + e.what())};
    } catch (const json::exception& e) {
      return {400, error_body("invalid-argument", e.what())};
    } catch (const Error& e) {
      return {http_status(e.kind()), error_body(to_string(e.kind()), e.what())};
    } catch (const std::exception& e) {
      return {500, error_body("internal", e.what())};
    }
  }

  /// Registers a catch-all handler for GET and POST on the server.
  void mount(httplib::Server& server) {
    auto dispatch = [this](const httplib::Request& req, httplib::Response& res) {
      std::map<std::string, std::string> query;
      for (const auto& [k, v] : req.params) query[k] = v;
      auto r = handle(req.method, req.path, req.body, query);
      res.status = r.status;
      res.set_content(r.body.dump(), "application/json");
    };
    server.Get(".*", dispatch);
    server.Post(".*", dispatch);
  }

  JobRegistry& jobs() { return jobs_; }

 private:
  Response route(const std::string& method, const std::string& path, const json& req,
                 const std::map<std::string, std::string>& query) {
    static const std::regex session_re(R"(^/sessions/([A-Za-z0-9_-]+)(/[a-z]+)?$)");
    static const std::regex job_re(R"(^/jobs/([A-Za-z0-9_-]+)$)");
    std::smatch mt;

    if (path == "/health" && method == "GET") return {200, {{"status", "ok"}}};
    if (path == "/sessions" && method == "GET") return {200, {{"sessions", store_.ids()}}};
    if (path == "/sessions" && method == "POST") return create(req);
    if (path == "/sessions/load" && method == "POST") {
      auto id = store_.load(req.at("id").get<std::string>());
      return {200, store_.with(id, [](Session& s) { return s.to_json(); })};
    }
    if (std::regex_match(path, mt, job_re) && method == "GET") return {200, jobs_.status(mt[1])};
    if (std::regex_match(path, mt, session_re)) {
      const std::string id = mt[1];
      const std::string action = mt[2].matched ? std::string(mt[2]).substr(1) : "";
      if (action.empty() && method == "GET")
        return {200, store_.with(id, [](Session& s) { return s.to_json(); })};
      if (action == "candidates" && method == "GET") {
        return {200, store_.with(id, [&](Session& s) {
                  std::size_t index = s.current_index();
                  if (auto it = query.find("snapshot"); it != query.end()) index = parse_index(it->second);
                  return candidate_table_json(s, index);
                })};
      }
      if (action == "motifs" && method == "GET")
        return {200, store_.with(id, [](Session& s) { return json{{"motifs", motif_suggestions(s)}}; })};
      if (action == "extend" && method == "POST") {
        auto a = addition_from_json(req);
        return {201, store_.with(id, [&](Session& s) {
                  s.extend(a);
                  return json{{"session", s.to_json()}, {"candidates", candidate_table_json(s, s.current_index())}};
                })};
      }
      if (action == "branch" && method == "POST") {
        std::size_t index = store_.with(id, [&](Session& s) {
          return req.contains("snapshot") ? req["snapshot"].get<std::size_t>() : s.current_index();
        });
        auto new_id = store_.branch(id, index);
        return {201, store_.with(new_id, [](Session& s) { return s.to_json(); })};
      }
      if (action == "save" && method == "POST") return {200, {{"session", id}, {"path", store_.save(id).string()}}};
      if (action == "realize" && method == "POST") return realize(id, req);
    }
    return {404, error_body("not-found", "no route " + method + " " + path)};
  }

  static std::size_t parse_index(const std::string& text) {
    try {
      std::size_t used = 0;
      auto v = std::stoul(text, &used);
      if (used == text.size()) return v;
    } catch (const std::exception&) {
    }
    throw Error(ErrorKind::invalid_argument, "bad snapshot index '" + text + "'");
  }

  Response create(const json& req) {
    const int n = req.at("n").get<int>();
    const int m = req.at("m").get<int>();
    std::vector<double> known;
    if (req.contains("known")) known = values_from_json(req["known"]);
    auto id = store_.create(n, m, known, req.value("note", std::string()));
    return {201, store_.with(id, [](Session& s) { return s.to_json(); })};
  }

  // Body: {"snapshot"?: i, "candidate": {"p", "root"} | "spectrum": [..],
  //        "constraints"?: {..}, "tol"?: t, "limits"?: {"max_nodes", "max_seconds", "workers"}}
  Response realize(const std::string& id, const json& req) {
    SearchSpec spec;
    spec.objective = SearchObjective::realize;
    spec.tol = req.value("tol", 1e-6);
    spec.constraints = constraints_from_json(req.value("constraints", json()));
    if (req.contains("limits")) {
      const auto& l = req["limits"];
      spec.limits.max_nodes = l.value("max_nodes", spec.limits.max_nodes);
      spec.limits.max_seconds = l.value("max_seconds", spec.limits.max_seconds);
      spec.limits.workers = l.value("workers", spec.limits.workers);
    }
    std::size_t index = 0;
    json target_desc;
    store_.with(id, [&](Session& s) {
      index = req.contains("snapshot") ? req["snapshot"].get<std::size_t>() : s.current_index();
      spec.n = s.n();
      spec.m = s.m();
      if (req.contains("candidate")) {
        const auto& c = req["candidate"];
        const int p = c.at("p").get<int>();
        const int root = c.value("root", 0);
        const auto& table = s.candidates(index);
        int seen = 0;
        const CompletionCandidate* chosen = nullptr;
        for (const auto& row : table.rows)
          if (row.p == p && seen++ == root) chosen = &row;
        if (!chosen)
          throw Error(ErrorKind::not_found, "no candidate p=" + std::to_string(p) + " root=" + std::to_string(root));
        spec.target = assemble_spectrum(table.known, *chosen);
        target_desc = {{"candidate", candidate_json(*chosen)}};
      } else if (req.contains("spectrum")) {
        spec.target = Spectrum(values_from_json(req["spectrum"]));
        target_desc = json::object();
      } else {
        throw Error(ErrorKind::invalid_argument, "realize needs a candidate or a spectrum");
      }
      s.snapshot(index);
    });
    if (spec.target.size() != static_cast<std::size_t>(spec.n))
      throw Error(ErrorKind::invalid_argument, "assembled spectrum has length " + std::to_string(spec.target.size()) +
                                                   ", expected n=" + std::to_string(spec.n));
    target_desc["target"] = spec.target.values();
    target_desc["target_groups"] = groups_json(spec.target);
    target_desc["constraints"] = constraints_json(spec.constraints);
    target_desc["tol"] = spec.tol;

    auto job = jobs_.start(id, index, target_desc, spec, [this](const Job& j, const json& result) {
      json record = j.request;
      record["job"] = j.id;
      record["result"] = result;
      try {
        store_.with(j.session, [&](Session& s) {
          s.attach_realization(j.snapshot, record);
          return 0;
        });
      } catch (const Error&) {
        // The session may have been replaced by a load; the job keeps its result.
      }
    });
    return {202, {{"job", job}, {"session", id}, {"snapshot", index}, {"status_url", "/jobs/" + job}}};
  }

  SessionStore& store_;
  JobRegistry jobs_;
};

}  // namespace genergy::explorer
