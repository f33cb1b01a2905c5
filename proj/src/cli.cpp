#include "cli.hpp"

#include <csignal>
#include <optional>

#include "genergy/explorer/api.hpp"
#include "genergy/format.hpp"
#include "genergy/graph6.hpp"
#include "genergy/json_io.hpp"
#include "genergy/search.hpp"
#include "genergy/value_expr.hpp"
#include "genergy/verify.hpp"

#include <CLI11.hpp>

namespace genergy::cli {

namespace {

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::format: return kFormat;
    case ErrorKind::budget_exhausted: return kBudget;
    default: return kInfeasible;
  }
}

struct ClassFlags {
  std::optional<int> m;
  std::optional<int> regular;
  bool bipartite = false;
  bool connected = false;
  bool tree = false;
  bool complement_cycles = false;
  std::uint64_t max_nodes = SearchLimits{}.max_nodes;
  double max_seconds = SearchLimits{}.max_seconds;
  unsigned workers = 1;

  void add_to(CLI::App* app) {
    app->add_option("--m", m, "Edge count");
    app->add_option("--regular", regular, "Common vertex degree");
    app->add_flag("--bipartite", bipartite);
    app->add_flag("--connected", connected);
    app->add_flag("--tree", tree);
    app->add_flag("--complement-cycles", complement_cycles, "Complement is a disjoint union of cycles");
    app->add_option("--max-nodes", max_nodes, "Search node budget");
    app->add_option("--max-seconds", max_seconds, "Search time budget");
    app->add_option("--workers", workers, "Worker threads");
  }

  SearchSpec spec(int n) const {
    SearchSpec s;
    s.n = n;
    s.m = m;
    s.constraints.regular = regular;
    s.constraints.bipartite = bipartite;
    s.constraints.connected = connected;
    s.constraints.tree = tree;
    s.constraints.complement_cycles = complement_cycles;
    s.limits.max_nodes = max_nodes;
    s.limits.max_seconds = max_seconds;
    s.limits.workers = workers;
    return s;
  }
};

int report_search(const SearchResult& r, bool extremal, bool as_json, std::ostream& out) {
  if (as_json) {
    out << search_result_json(r, extremal).dump(2) << "\n";
  } else {
    for (const auto& reason : r.fast_fail) out << "fast-fail " << reason << "\n";
    for (const auto& f : r.best)
      out << f.graph6 << "  m=" << f.graph.m() << "  E=" << fixed(f.energy) << "  spectrum "
          << spectrum_groups_text(f.spectrum) << "\n";
    out << "status " << search_status(r, extremal) << "  graphs " << r.graphs_examined << "  nodes " << r.nodes_visited
        << "\n";
  }
  if (extremal) {
    if (!r.exhausted) return kBudget;
    return r.best.empty() ? kInfeasible : kOk;
  }
  if (!r.best.empty()) return kOk;
  return r.exhausted ? kInfeasible : kBudget;
}

httplib::Server* g_server = nullptr;

void stop_server(int) {
  if (g_server) g_server->stop();
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Graph energy toolkit: spectrum completion, extremal search, realization", "genergy"};
  app.require_subcommand(1);
  bool as_json = false;
  app.add_flag("--json", as_json, "Machine-readable output");

  auto* complete = app.add_subcommand("complete", "Candidate completions of a partial spectrum");
  int c_n = 0, c_m = 0;
  std::string c_known;
  bool c_full = false;
  double c_tol = kDefaultMomentTolerance;
  complete->add_option("--n", c_n, "Vertex count")->required();
  complete->add_option("--m", c_m, "Edge count")->required();
  complete->add_option("--known", c_known, "Known eigenvalues, e.g. 15,-3:3,phi-1:4");
  complete->add_flag("--full-range", c_full, "Run p over 1..|J|-1");
  complete->add_option("--moment-tol", c_tol, "Integrality tolerance of the third-moment test");

  auto* spectrum = app.add_subcommand("spectrum", "Spectrum and energy of a graph6 graph");
  std::string s_code;
  spectrum->add_option("--graph6", s_code, "graph6 code")->required();

  auto* search = app.add_subcommand("search", "Exhaustive extremal-energy search over a class");
  int q_n = 0;
  std::string q_objective = "max";
  ClassFlags q_flags;
  search->add_option("--n", q_n, "Vertex count")->required();
  search->add_option("--objective", q_objective)->check(CLI::IsMember({"max", "min"}));
  q_flags.add_to(search);

  auto* realize = app.add_subcommand("realize", "Search a class for a graph with a target spectrum");
  int r_n = 0;
  std::string r_target;
  double r_tol = 1e-6;
  ClassFlags r_flags;
  realize->add_option("--n", r_n, "Vertex count")->required();
  realize->add_option("--target", r_target, "Target spectrum, e.g. 3,sqrt(2):6,-sqrt(2):6,-3")->required();
  realize->add_option("--tol", r_tol, "Per-eigenvalue tolerance");
  r_flags.add_to(realize);

  auto* verify_tables = app.add_subcommand("verify-tables", "Regenerate the reference tables and check them");

  auto* serve = app.add_subcommand("serve", "Run the exploration REST service");
  int v_port = 8080;
  std::string v_host = "127.0.0.1";
  std::string v_dir;
  serve->add_option("--port", v_port);
  serve->add_option("--host", v_host);
  serve->add_option("--session-dir", v_dir, "Directory for saved sessions");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kFormat;
  }

  try {
    if (complete->parsed()) {
      auto known = derive_constants(parse_multiset(c_known));
      CompletionOptions opts;
      opts.full_range = c_full;
      opts.moment_tol = c_tol;
      auto rows = complete_spectrum(c_n, c_m, known, opts);
      if (as_json) {
        json j = {{"n", c_n}, {"m", c_m}, {"known", known_json(known)}, {"rows", json::array()}};
        for (const auto& r : rows) j["rows"].push_back(candidate_json(r));
        out << j.dump(2) << "\n";
      } else {
        out << "n=" << c_n << " m=" << c_m << " |K|=" << known.size() << " C+=" << fixed(known.c_plus)
            << " C-=" << fixed(known.c_minus) << " C=" << fixed(known.c) << " D=" << fixed(known.d) << "\n";
        out << candidate_table(rows);
      }
      return kOk;
    }

    if (spectrum->parsed()) {
      auto g = graph6::decode(s_code);
      auto s = eigenvalues(g);
      auto rep = energy_report(s);
      auto reg = is_regular(g);
      if (as_json) {
        json j = {{"graph6", s_code},
                  {"n", g.n()},
                  {"m", g.m()},
                  {"spectrum", s.values()},
                  {"groups", groups_json(s)},
                  {"energy", rep.energy},
                  {"moment1", rep.moment1},
                  {"moment2", rep.moment2},
                  {"moment3", rep.moment3},
                  {"triangles", rep.triangle_count},
                  {"triangles_integral", rep.triangle_count_integral},
                  {"km_bound", rep.km_bound},
                  {"km_slack", rep.km_slack},
                  {"regular", reg.regular},
                  {"bipartite", is_bipartite(g)}};
        out << j.dump(2) << "\n";
      } else {
        out << "n=" << g.n() << " m=" << g.m() << "\n";
        out << "spectrum   " << spectrum_groups_text(s) << "\n";
        out << "energy     " << fixed(rep.energy) << "\n";
        out << "moments    " << fixed(rep.moment1) << " " << fixed(rep.moment2) << " " << fixed(rep.moment3) << "\n";
        out << "triangles  " << fixed(rep.triangle_count) << " (counted " << triangle_count(g) << ")\n";
        out << "KM bound   " << fixed(rep.km_bound) << " (slack " << fixed(rep.km_slack) << ")\n";
        out << "regular    " << (reg.regular ? "yes, degree " + std::to_string(reg.degree) : "no") << "\n";
        out << "bipartite  " << (is_bipartite(g) ? "yes" : "no") << "\n";
      }
      return kOk;
    }

    if (search->parsed()) {
      auto spec = q_flags.spec(q_n);
      spec.objective = q_objective == "min" ? SearchObjective::min_energy : SearchObjective::max_energy;
      return report_search(extremal_energy(spec), true, as_json, out);
    }

    if (realize->parsed()) {
      auto spec = r_flags.spec(r_n);
      spec.objective = SearchObjective::realize;
      spec.target = Spectrum(parse_multiset(r_target));
      spec.tol = r_tol;
      return report_search(realize_spectrum(spec), false, as_json, out);
    }

    if (verify_tables->parsed()) {
      bool all = true;
      json j = json::array();
      auto emit = [&](const verify::Outcome& o) {
        all = all && o.passed;
        if (as_json)
          j.push_back({{"name", o.name}, {"passed", o.passed}, {"detail", o.detail}});
        else
          out << (o.passed ? "PASS" : "FAIL") << "  " << o.name << ": " << o.detail << "\n";
      };
      for (const auto& o : verify::check_completion_tables()) emit(o);
      for (const auto& o : verify::check_maximal_graphs()) emit(o);
      if (as_json) out << j.dump(2) << "\n";
      return all ? kOk : kInfeasible;
    }

    if (serve->parsed()) {
      explorer::SessionStore store(v_dir);
      explorer::ExplorerApi api(store);
      httplib::Server server;
      api.mount(server);
      g_server = &server;
      std::signal(SIGINT, stop_server);
      std::signal(SIGTERM, stop_server);
      err << "listening on " << v_host << ":" << v_port << std::endl;
      bool ok = server.listen(v_host, v_port);
      g_server = nullptr;
      if (!ok) {
        err << "cannot listen on " << v_host << ":" << v_port << "\n";
        return kInfeasible;
      }
      return kOk;
    }
  } catch (const Error& e) {
    err << to_string(e.kind()) << ": " << e.what() << "\n";
    return exit_code(e.kind());
  } catch (const std::filesystem::filesystem_error& e) {
    err << e.what() << "\n";
    return kInfeasible;
  }
  return kOk;
}

}  // namespace genergy::cli
