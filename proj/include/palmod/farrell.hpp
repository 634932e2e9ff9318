#pragma once

// Periodic cohomology tables for the normalizer at an odd prime p in ranks
// p <= n <= 2p-1.  The table has period 2(p-1); residue 0 carries Z/p, the
// low band repeats the mod-p cohomology of the quotient complex, and the
// remaining residues vanish.

#include "palmod/complex.hpp"
#include "palmod/homology.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace palmod {

struct FarrellTable {
  int p = 0, n = 0;
  int period = 0;
  // residue_dims[r] = k means (Z/p)^k in degrees congruent to r mod period;
  // residue 0 always holds a single Z/p.
  std::vector<int> residue_dims;
  bool post_check_ok = false;  // mod-p cohomology vanishes in degree n-p

  std::string entry(int residue) const {
    int k = residue_dims[static_cast<std::size_t>(residue)];
    if (k == 0) return "0";
    std::string zp = "Z/" + std::to_string(p);
    return k == 1 ? zp : "(" + zp + ")^" + std::to_string(k);
  }
};

// q_cohomology[r] = dim of the degree-r mod-p cohomology of the quotient
// complex (over a field this equals the homology dimension).
inline FarrellTable assemble_farrell(int p, int n, const std::vector<long long>& q_cohomology) {
  if (p < 3 || !is_prime(p)) throw std::invalid_argument("p must be an odd prime");
  if (n < p || n > 2 * p - 1) throw std::domain_error("rank outside the covered range [p, 2p-1]");
  int m = n - p;

  FarrellTable t;
  t.p = p;
  t.n = n;
  t.period = 2 * (p - 1);
  t.residue_dims.assign(static_cast<std::size_t>(t.period), 0);

  // Residue 0 is pinned to Z/p; the band 1..m-1 repeats the quotient
  // cohomology; residues m..2p-3 vanish.  (m <= p-1 < period, so the band
  // and the pinned residue never collide.)
  t.residue_dims[0] = 1;
  for (int r = 1; r <= m - 1; ++r) {
    long long d = (r < static_cast<int>(q_cohomology.size())) ? q_cohomology[static_cast<std::size_t>(r)] : 0;
    t.residue_dims[static_cast<std::size_t>(r)] = static_cast<int>(d);
  }

  long long top = (m < static_cast<int>(q_cohomology.size())) ? q_cohomology[static_cast<std::size_t>(m)] : 0;
  t.post_check_ok = (m == 0) || (top == 0);
  return t;
}

inline FarrellTable assemble_farrell(int p, int n) {
  QuotientComplex q = build_complex(FamilySpec{Family::PSigma, n, p});
  HomologyResult h = homology(q, Coefficients::prime_field(p));
  std::vector<long long> dims;
  for (const DegreeHomology& d : h.degrees) dims.push_back(d.betti);
  return assemble_farrell(p, n, dims);
}

struct SigmaPComparison {
  int p = 0, n = 0;
  bool ok = false;  // table is exactly Z/p at residue 0
  FarrellTable table;
};

// For m = n - p <= 2 the quotient complex is contractible, so the table
// must collapse to a single Z/p in residue 0.  Larger m is not covered.
inline SigmaPComparison sigma_p_comparison(int p, int n) {
  if (p < 3 || !is_prime(p)) throw std::invalid_argument("p must be an odd prime");
  if (n - p > 2) throw std::domain_error("comparison covered only for n - p <= 2");
  SigmaPComparison cmp;
  cmp.p = p;
  cmp.n = n;
  cmp.table = assemble_farrell(p, n);
  cmp.ok = cmp.table.post_check_ok;
  for (int r = 0; r < cmp.table.period; ++r) {
    int want = (r == 0) ? 1 : 0;
    if (cmp.table.residue_dims[static_cast<std::size_t>(r)] != want) cmp.ok = false;
  }
  return cmp;
}

}  // namespace palmod
