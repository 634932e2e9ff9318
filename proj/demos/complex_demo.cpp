// Builds the theta-decorated complex for p = 3, n = 5 and prints its
// statistics and mod-3 homology.

#include "palmod/homology.hpp"
#include "palmod/report.hpp"

#include <iostream>

int main() {
  using namespace palmod;
  FamilySpec spec{Family::PSigma, 5, 3};
  QuotientComplex q = build_complex(spec);
  std::cout << render_complex_text(q);

  HomologyResult h = homology(q, Coefficients::prime_field(3));
  std::cout << "mod-3 betti numbers:";
  for (const DegreeHomology& d : h.degrees) std::cout << ' ' << d.betti;
  std::cout << "\n";
  return 0;
}
