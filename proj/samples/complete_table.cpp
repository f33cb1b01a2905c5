// Candidate completions for a regular graph on 16 vertices with 80 edges.
#include <iostream>

#include "genergy/completion.hpp"
#include "genergy/format.hpp"

int main() {
  using namespace genergy;
  const double known[] = {10};
  auto rows = complete_spectrum(16, 80, derive_constants(known));
  std::cout << candidate_table(rows);

  auto best = best_candidates(rows, CandidateFilter::moment_pass_only, Objective::max);
  const auto& c = best.front();
  std::cout << "\nbest passing row: " << c.p << " x " << fixed(c.x) << ", " << c.q << " x " << fixed(c.y)
            << ", E=" << fixed(c.energy) << "\n";
}
