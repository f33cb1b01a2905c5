// Maximal energy over all graphs on n vertices, n = 2..8.
#include <iostream>

#include "genergy/format.hpp"
#include "genergy/search.hpp"

int main() {
  using namespace genergy;
  for (int n = 2; n <= 8; ++n) {
    SearchSpec spec;
    spec.n = n;
    auto r = extremal_energy(spec);
    std::cout << "n=" << n << "  E=" << fixed(r.best.front().energy) << "  graphs examined " << r.graphs_examined
              << "\n";
    for (const auto& f : r.best) std::cout << "    " << f.graph6 << "  m=" << f.graph.m() << "\n";
  }
}
