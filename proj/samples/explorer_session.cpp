// Narrowing the spectrum of a 15-regular graph on 18 vertices step by step,
// then asking for a realization inside the complement-of-cycles class.
#include <iostream>

#include "genergy/explorer/session.hpp"
#include "genergy/format.hpp"
#include "genergy/search.hpp"

int main() {
  using namespace genergy;
  using namespace genergy::explorer;

  Session s("demo", 18, 135, {15}, "largest eigenvalue of a 15-regular graph");

  Addition components;
  components.kind = Addition::Kind::values;
  components.values = {-3, -3, -3};
  components.note = "complement has four components";
  s.extend(components);

  Addition pentagons;
  pentagons.kind = Addition::Kind::motif;
  pentagons.motif.kind = Motif::Kind::cycle_in_complement;
  pentagons.motif.length = 5;
  pentagons.motif.copies = 2;
  pentagons.motif.component_eigenvalue = false;
  s.extend(pentagons);

  for (std::size_t i = 0; i < s.history().size(); ++i) {
    std::cout << "snapshot " << i << " (" << s.snapshot(i).kind << "): " << s.snapshot(i).note << "\n";
    std::cout << candidate_table(s.candidates(i).rows) << "\n";
  }

  const auto& table = s.candidates();
  auto best = best_candidates(table.rows, CandidateFilter::moment_pass_only, Objective::max);
  SearchSpec spec;
  spec.n = 18;
  spec.objective = SearchObjective::realize;
  spec.constraints.complement_cycles = true;
  spec.target = assemble_spectrum(table.known, best.front());
  auto r = realize_spectrum(spec);
  for (const auto& f : r.best) std::cout << "realized by " << f.graph6 << "  E=" << fixed(f.energy) << "\n";
}
