// Verifies the relator schema at rank 4 and prints the outcome per kind.

#include "palmod/presentation.hpp"

#include <iostream>

int main() {
  using namespace palmod;
  int n = 4;
  for (PresentationFamily fam : {PresentationFamily::EPA, PresentationFamily::PSA}) {
    RelatorReport rep = verify_relators(n, fam);
    const char* name = (fam == PresentationFamily::EPA) ? "palindromic" : "conjugating";
    std::cout << name << " family, rank " << n << ": " << rep.instances.size()
              << " relator instances, " << rep.l2r_failures << " failures\n";
    std::cout << "  other family's kind-3 shape fails " << rep.cross_shape_failures << "/"
              << rep.cross_shape_total << " instances\n";
  }
  AbelianizationResult ab = abelianization_invariants(n, PresentationFamily::EPA);
  std::cout << "palindromic abelianization: free rank " << ab.free_rank << ", "
            << ab.invariant_factors.size() << " factors of order 2\n";
  return 0;
}
