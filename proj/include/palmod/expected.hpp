#pragma once

// Reference values for the built-in families.  Entries marked external come
// from independent computations of the same complexes; the rest are pinned
// regression values.  The CLI treats any mismatch as a hard failure.

#include "palmod/complex.hpp"
#include "palmod/homology.hpp"

#include <vector>

namespace palmod {

struct ExpectedFVector {
  std::vector<long long> f;  // empty when nothing is registered
  bool external = false;
};

inline ExpectedFVector expected_f_vector(const FamilySpec& spec) {
  if (spec.family == Family::PSigma) {
    switch (spec.n - spec.p) {
      case 0: return {{1}, true};
      case 1: return {{3, 2}, true};
      case 2: return {{13, 28, 16}, true};
    }
  } else if (spec.family == Family::Sigma) {
    switch (spec.n) {
      case 1: return {{1}, false};
      case 2: return {{3, 2}, false};
      case 3: return {{9, 18, 10}, false};
      case 4: return {{33, 154, 224, 102}, false};
      case 5: return {{123, 1266, 3682, 4098, 1560}, false};
    }
  }
  return {};
}

// Coefficient systems in which the reduced top-degree homology of a family
// complex is required to vanish.  Integral coefficients are only enforced
// where the whole reduced homology is known to vanish; characteristic 2 is
// left unchecked because 2-torsion is present in the automorphism groups.
inline bool top_vanishing_enforced(const FamilySpec& spec, const Coefficients& c) {
  if (spec.family == Family::Fixture) return false;
  if (c.kind == Coefficients::Kind::Rationals) return true;
  if (c.kind == Coefficients::Kind::PrimeField) return c.p >= 3;
  if (c.kind == Coefficients::Kind::Integers)
    return spec.family == Family::PSigma && spec.n - spec.p <= 2;
  return false;
}

}  // namespace palmod
