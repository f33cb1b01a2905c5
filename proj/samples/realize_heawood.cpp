// Recovers the Heawood graph from its spectrum 3, sqrt(2)^6, -sqrt(2)^6, -3.
#include <cmath>
#include <iostream>

#include "genergy/format.hpp"
#include "genergy/search.hpp"

int main() {
  using namespace genergy;
  SearchSpec spec;
  spec.n = 14;
  spec.objective = SearchObjective::realize;
  spec.constraints.regular = 3;
  spec.constraints.bipartite = true;
  const std::vector<EigenGroup> groups = {{3, 1}, {std::sqrt(2.0), 6}, {-std::sqrt(2.0), 6}, {-3, 1}};
  spec.target = Spectrum::from_groups(groups);

  auto r = realize_spectrum(spec);
  for (const auto& f : r.best)
    std::cout << f.graph6 << "  E=" << fixed(f.energy) << "  " << spectrum_groups_text(f.spectrum) << "\n";
  std::cout << (r.certified_absent() ? "no such graph" : r.exhausted ? "search complete" : "budget exhausted")
            << ", " << r.graphs_examined << " graphs examined\n";
}
