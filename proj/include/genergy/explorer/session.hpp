#pragma once

#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "genergy/completion.hpp"
#include "genergy/json_io.hpp"
#include "genergy/value_expr.hpp"

namespace genergy::explorer {

inline constexpr const char* kSessionSchema = "genergy.session";
inline constexpr int kSessionSchemaVersion = 1;

// ---------------------------------------------------------------------------
// Motifs

/// Eigenvalues a structural guess adds to K. A cycle of the given length in
/// the complement of a regular graph contributes -v-1 for each cycle
/// eigenvalue v other than its degree 2; with component_eigenvalue set it
/// also contributes the -3 that each extra complement component brings.
struct Motif {
  enum class Kind { cycle_in_complement, explicit_values };
  Kind kind = Kind::explicit_values;
  int length = 0;
  int copies = 1;
  bool component_eigenvalue = true;
  std::vector<double> values;

  std::vector<double> contributed() const {
    if (kind == Kind::explicit_values) return values;
    if (copies < 1) throw Error(ErrorKind::invalid_argument, "motif copies must be >= 1");
    auto cyc = cycle_spectrum(length);
    std::vector<double> one;
    bool skipped_degree = false;
    for (double v : cyc) {
      if (!skipped_degree && v == 2.0) {
        skipped_degree = true;
        continue;
      }
      one.push_back(genergy::detail::snap_closed_form(-v - 1));
    }
    if (component_eigenvalue) one.push_back(-3.0);
    std::vector<double> out;
    for (int c = 0; c < copies; ++c) out.insert(out.end(), one.begin(), one.end());
    return out;
  }

  std::string label() const {
    if (kind == Kind::explicit_values) return "explicit values";
    static const char* names[] = {"", "", "", "triangle", "quadrangle", "pentagon", "hexagon"};
    std::string name = length < 7 ? names[length] : "C" + std::to_string(length);
    return std::to_string(copies) + " x " + name + " in complement";
  }
};

inline json motif_json(const Motif& m) {
  json j;
  if (m.kind == Motif::Kind::explicit_values) {
    j = {{"kind", "explicit-values"}, {"values", m.values}};
  } else {
    j = {{"kind", "cycle-in-complement"},
         {"length", m.length},
         {"copies", m.copies},
         {"component_eigenvalue", m.component_eigenvalue}};
  }
  return j;
}

/// Numbers, or strings holding value expressions such as "phi-1" or "-sqrt(2)".
inline std::vector<double> values_from_json(const json& j) {
  if (!j.is_array()) throw Error(ErrorKind::invalid_argument, "values must be an array");
  std::vector<double> out;
  for (const auto& v : j) {
    if (v.is_number()) out.push_back(v.get<double>());
    else if (v.is_string()) out.push_back(parse_value(v.get<std::string>()));
    else throw Error(ErrorKind::invalid_argument, "values must be numbers or expression strings");
  }
  return out;
}

inline Motif motif_from_json(const json& j) {
  Motif m;
  auto kind = j.value("kind", std::string());
  if (kind == "cycle-in-complement") {
    m.kind = Motif::Kind::cycle_in_complement;
    m.length = j.at("length").get<int>();
    m.copies = j.value("copies", 1);
    m.component_eigenvalue = j.value("component_eigenvalue", true);
  } else if (kind == "explicit-values") {
    m.kind = Motif::Kind::explicit_values;
    m.values = values_from_json(j.at("values"));
  } else {
    throw Error(ErrorKind::invalid_argument, "unknown motif kind '" + kind + "'");
  }
  return m;
}

// ---------------------------------------------------------------------------
// Additions to K

/// Takes one root of a candidate row of the snapshot being extended:
/// `count` copies of its x (part "x") or y (part "y"). root 0 is the first
/// row served for that p, root 1 the second.
struct AdoptCandidate {
  int p = 0;
  int root = 0;
  char part = 'x';
  int count = 1;
};

struct Addition {
  enum class Kind { values, adopt, motif };
  Kind kind = Kind::values;
  std::vector<double> values;
  AdoptCandidate adopt;
  Motif motif;
  std::string note;
};

inline const char* to_string(Addition::Kind k) {
  switch (k) {
    case Addition::Kind::values: return "values";
    case Addition::Kind::adopt: return "adopt";
    case Addition::Kind::motif: return "motif";
  }
  return "?";
}

inline json addition_json(const Addition& a) {
  json j = {{"kind", to_string(a.kind)}};
  switch (a.kind) {
    case Addition::Kind::values: j["values"] = a.values; break;
    case Addition::Kind::adopt:
      j["adopt"] = {{"p", a.adopt.p}, {"root", a.adopt.root}, {"part", std::string(1, a.adopt.part)},
                    {"count", a.adopt.count}};
      break;
    case Addition::Kind::motif: j["motif"] = motif_json(a.motif); break;
  }
  if (!a.note.empty()) j["note"] = a.note;
  return j;
}

inline Addition addition_from_json(const json& j) {
  Addition a;
  a.note = j.value("note", std::string());
  auto kind = j.value("kind", std::string());
  if (kind == "values") {
    a.kind = Addition::Kind::values;
    a.values = values_from_json(j.at("values"));
  } else if (kind == "adopt") {
    a.kind = Addition::Kind::adopt;
    const auto& d = j.at("adopt");
    a.adopt.p = d.at("p").get<int>();
    a.adopt.root = d.value("root", 0);
    auto part = d.value("part", std::string("x"));
    if (part != "x" && part != "y") throw Error(ErrorKind::invalid_argument, "adopt part must be 'x' or 'y'");
    a.adopt.part = part[0];
    a.adopt.count = d.value("count", 1);
  } else if (kind == "motif") {
    a.kind = Addition::Kind::motif;
    a.motif = motif_from_json(j.at("motif"));
  } else {
    throw Error(ErrorKind::invalid_argument, "unknown addition kind '" + kind + "'");
  }
  return a;
}

// ---------------------------------------------------------------------------
// Sessions

struct Snapshot {
  std::vector<double> known;
  /// kind is "initial" or the addition kind; detail holds the
  /// addition exactly as applied so the history can be replayed.
  std::string kind = "initial";
  std::string note;
  json detail;
  std::vector<json> realizations;
};

/// Candidate table for (n, m, K). An infeasible completion is reported as
/// an empty table with a reason rather than as an error.
struct CandidateTable {
  KnownFamily known;
  std::vector<CompletionCandidate> rows;
  bool feasible = true;
  std::string reason;
};

inline CandidateTable candidate_table_for(int n, int m, const std::vector<double>& known) {
  CandidateTable t;
  t.known = derive_constants(known);
  try {
    t.rows = complete_spectrum(n, m, t.known);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::infeasible) throw;
    t.feasible = false;
    t.reason = e.what();
  }
  return t;
}

/// Rejects K that cannot belong to any completion: it must leave at least
/// two free eigenvalues and its sum of squares cannot exceed 2m.
inline void check_feasible(int n, int m, const std::vector<double>& known) {
  if (static_cast<int>(known.size()) > n - 2)
    throw Error(ErrorKind::infeasible, "|K| <= n-2 violated: |K|=" + std::to_string(known.size()) +
                                           ", n=" + std::to_string(n));
  double d = 0;
  for (double v : known) d += v * v;
  if (d > 2.0 * m + 1e-9 * std::max(1.0, 2.0 * m))
    throw Error(ErrorKind::infeasible, "D <= 2m violated: D=" + fixed(d, 6) + ", 2m=" + std::to_string(2 * m));
}

class Session {
 public:
  Session() = default;

  Session(std::string id, int n, int m, std::vector<double> initial, std::string note = {})
      : id_(std::move(id)), n_(n), m_(m) {
    if (n < 2) throw Error(ErrorKind::invalid_argument, "n must be >= 2");
    if (m <= 0) throw Error(ErrorKind::invalid_argument, "m must be positive");
    check_feasible(n, m, initial);
    Snapshot s;
    s.known = std::move(initial);
    s.note = std::move(note);
    history_.push_back(std::move(s));
  }

  const std::string& id() const { return id_; }
  int n() const { return n_; }
  int m() const { return m_; }
  const std::vector<Snapshot>& history() const { return history_; }
  const Snapshot& current() const { return history_.back(); }
  std::size_t current_index() const { return history_.size() - 1; }
  const std::optional<std::pair<std::string, std::size_t>>& branched_from() const { return branched_from_; }

  const Snapshot& snapshot(std::size_t index) const {
    if (index >= history_.size())
      throw Error(ErrorKind::not_found, "snapshot " + std::to_string(index) + " does not exist");
    return history_[index];
  }

  const CandidateTable& candidates(std::size_t index) const {
    snapshot(index);
    if (tables_.size() < history_.size()) tables_.resize(history_.size());
    auto& slot = tables_[index];
    if (!slot) slot = candidate_table_for(n_, m_, history_[index].known);
    return *slot;
  }
  const CandidateTable& candidates() const { return candidates(current_index()); }

  /// Values the addition contributes when applied to the current snapshot.
  std::vector<double> resolve(const Addition& a) const {
    switch (a.kind) {
      case Addition::Kind::values:
        if (a.values.empty()) throw Error(ErrorKind::invalid_argument, "no values to add");
        return a.values;
      case Addition::Kind::motif: return a.motif.contributed();
      case Addition::Kind::adopt: {
        const auto& table = candidates();
        std::vector<const CompletionCandidate*> rows;
        for (const auto& r : table.rows)
          if (r.p == a.adopt.p) rows.push_back(&r);
        if (a.adopt.root < 0 || a.adopt.root >= static_cast<int>(rows.size()))
          throw Error(ErrorKind::not_found, "no candidate p=" + std::to_string(a.adopt.p) +
                                                " root=" + std::to_string(a.adopt.root));
        const auto& c = *rows[static_cast<std::size_t>(a.adopt.root)];
        const int available = a.adopt.part == 'x' ? c.p : c.q;
        if (a.adopt.count < 1 || a.adopt.count > available)
          throw Error(ErrorKind::invalid_argument, "adopt count must be in 1.." + std::to_string(available));
        return std::vector<double>(static_cast<std::size_t>(a.adopt.count), a.adopt.part == 'x' ? c.x : c.y);
      }
    }
    return {};
  }

  /// Appends a snapshot with K extended by the addition.
  const Snapshot& extend(const Addition& a) {
    auto added = resolve(a);
    Snapshot s;
    s.known = current().known;
    s.known.insert(s.known.end(), added.begin(), added.end());
    check_feasible(n_, m_, s.known);
    s.kind = to_string(a.kind);
    s.note = a.note.empty() && a.kind == Addition::Kind::motif ? a.motif.label() : a.note;
    s.detail = addition_json(a);
    s.detail["added"] = added;
    history_.push_back(std::move(s));
    return history_.back();
  }

  void attach_realization(std::size_t index, json result) {
    snapshot(index);
    history_[index].realizations.push_back(std::move(result));
  }

  /// New session holding a copy of snapshots 0..index.
  Session branch(std::string new_id, std::size_t index) const {
    snapshot(index);
    Session s;
    s.id_ = std::move(new_id);
    s.n_ = n_;
    s.m_ = m_;
    s.history_.assign(history_.begin(), history_.begin() + static_cast<std::ptrdiff_t>(index) + 1);
    s.branched_from_ = {{id_, index}};
    return s;
  }

  json to_json() const {
    json hist = json::array();
    for (std::size_t i = 0; i < history_.size(); ++i) {
      const auto& s = history_[i];
      json display = json::array();
      for (double v : s.known) display.push_back(fixed(v));
      hist.push_back({{"index", i},
                      {"known", s.known},
                      {"known_display", display},
                      {"known_exact", exact_list_json(s.known)},
                      {"provenance", {{"kind", s.kind}, {"note", s.note}, {"detail", s.detail}}},
                      {"realizations", s.realizations}});
    }
    json j = {{"schema", kSessionSchema},
              {"version", kSessionSchemaVersion},
              {"id", id_},
              {"n", n_},
              {"m", m_},
              {"current", known_json(derive_constants(current().known))},
              {"history", hist}};
    j["branched_from"] =
        branched_from_ ? json{{"session", branched_from_->first}, {"snapshot", branched_from_->second}} : json(nullptr);
    return j;
  }

  static Session from_json(const json& j) {
    if (j.value("schema", std::string()) != kSessionSchema)
      throw Error(ErrorKind::format, "not a session document");
    if (j.value("version", 0) != kSessionSchemaVersion)
      throw Error(ErrorKind::unsupported, "unsupported session schema version " + std::to_string(j.value("version", 0)));
    Session s;
    s.id_ = j.at("id").get<std::string>();
    s.n_ = j.at("n").get<int>();
    s.m_ = j.at("m").get<int>();
    for (const auto& h : j.at("history")) {
      Snapshot snap;
      snap.known = h.at("known").get<std::vector<double>>();
      const auto& prov = h.at("provenance");
      snap.kind = prov.value("kind", std::string("initial"));
      snap.note = prov.value("note", std::string());
      snap.detail = prov.value("detail", json());
      for (const auto& r : h.value("realizations", json::array())) snap.realizations.push_back(r);
      check_feasible(s.n_, s.m_, snap.known);
      s.history_.push_back(std::move(snap));
    }
    if (s.history_.empty()) throw Error(ErrorKind::format, "session has no history");
    if (j.contains("branched_from") && !j["branched_from"].is_null())
      s.branched_from_ = {{j["branched_from"].at("session").get<std::string>(),
                           j["branched_from"].at("snapshot").get<std::size_t>()}};
    return s;
  }

 private:
  std::string id_;
  int n_ = 0;
  int m_ = 0;
  std::vector<Snapshot> history_;
  std::optional<std::pair<std::string, std::size_t>> branched_from_;
  mutable std::vector<std::optional<CandidateTable>> tables_;
};

/// Rebuilds a session from its first snapshot by re-applying every recorded
/// addition. Snapshots created by branching are copied through unchanged.
inline Session replay(const Session& original) {
  const auto& hist = original.history();
  Session s(original.id(), original.n(), original.m(), hist.front().known, hist.front().note);
  for (std::size_t i = 1; i < hist.size(); ++i) {
    auto a = addition_from_json(hist[i].detail);
    a.note = hist[i].note;
    s.extend(a);
  }
  return s;
}

// ---------------------------------------------------------------------------
// Store

/// Sessions by id behind one mutex. With a directory set, save() writes one
/// JSON document per session and load_all() reads them back.
class SessionStore {
 public:
  explicit SessionStore(std::filesystem::path dir = {}) : dir_(std::move(dir)) {
    if (!dir_.empty()) {
      std::filesystem::create_directories(dir_);
      load_all();
    }
  }

  const std::filesystem::path& directory() const { return dir_; }

  std::string create(int n, int m, std::vector<double> known, std::string note = {}) {
    std::lock_guard lock(mu_);
    auto id = next_id_locked();
    sessions_.emplace(id, Session(id, n, m, std::move(known), std::move(note)));
    return id;
  }

  /// Runs f on the session under the store lock.
  template <class F>
  decltype(auto) with(const std::string& id, F&& f) {
    std::lock_guard lock(mu_);
    return f(find_locked(id));
  }

  std::string branch(const std::string& id, std::size_t index) {
    std::lock_guard lock(mu_);
    auto new_id = next_id_locked();
    auto copy = find_locked(id).branch(new_id, index);
    sessions_.emplace(new_id, std::move(copy));
    return new_id;
  }

  std::vector<std::string> ids() const {
    std::lock_guard lock(mu_);
    std::vector<std::string> out;
    for (const auto& [id, s] : sessions_) out.push_back(id);
    return out;
  }

  std::filesystem::path save(const std::string& id) {
    std::lock_guard lock(mu_);
    if (dir_.empty()) throw Error(ErrorKind::unsupported, "store has no session directory");
    auto path = dir_ / (id + ".json");
    auto tmp = path;
    tmp += ".tmp";
    {
      std::ofstream out(tmp);
      out << find_locked(id).to_json().dump(2) << "\n";
      if (!out) throw Error(ErrorKind::invalid_argument, "cannot write " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
    return path;
  }

  /// Reads dir/id.json, replacing any in-memory session with that id.
  std::string load(const std::string& id) {
    std::lock_guard lock(mu_);
    if (dir_.empty()) throw Error(ErrorKind::unsupported, "store has no session directory");
    return load_file_locked(dir_ / (id + ".json"));
  }

  std::size_t load_all() {
    std::lock_guard lock(mu_);
    std::size_t count = 0;
    for (const auto& entry : std::filesystem::directory_iterator(dir_)) {
      if (entry.path().extension() != ".json") continue;
      load_file_locked(entry.path());
      ++count;
    }
    return count;
  }

 private:
  Session& find_locked(const std::string& id) {
    auto it = sessions_.find(id);
    if (it == sessions_.end()) throw Error(ErrorKind::not_found, "no session '" + id + "'");
    return it->second;
  }

  std::string next_id_locked() {
    std::string id;
    do id = "s" + std::to_string(++counter_);
    while (sessions_.count(id));
    return id;
  }

  std::string load_file_locked(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::not_found, "no session file " + path.string());
    json j;
    try {
      j = json::parse(in);
    } catch (const json::parse_error& e) {
      throw Error(ErrorKind::format, path.string() + ": " + e.what());
    }
    auto s = Session::from_json(j);
    auto id = s.id();
    sessions_.insert_or_assign(id, std::move(s));
    return id;
  }

  mutable std::mutex mu_;
  std::filesystem::path dir_;
  std::map<std::string, Session> sessions_;
  std::uint64_t counter_ = 0;
};

}  // namespace genergy::explorer
