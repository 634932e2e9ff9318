#pragma once

// Finite presentations for the elementary palindromic and basis-conjugating
// automorphism groups: relator instantiation, verification under both word
// reading conventions, abelianization, and witness subgroup certificates.

#include "palmod/automorphism.hpp"
#include "palmod/snf.hpp"

#include <array>
#include <stdexcept>
#include <vector>

namespace palmod {

enum class PresentationFamily { EPA, PSA };

// One occurrence of a presentation generator g_{i,j} (or its inverse) inside
// a relator word.  EPA reads g_{i,j} as a_i -> a_j a_i a_j, PSA as
// a_i -> a_j^-1 a_i a_j.
struct PresentationLetter {
  int i = 0, j = 0;
  int exp = 1;  // +1 or -1
};

struct Relator {
  int kind = 0;                     // 1, 2, 3 below
  std::array<int, 4> indices{};     // participating generator indices (0-padded)
  std::vector<PresentationLetter> lhs, rhs;
};

// Relator schemas, instantiated over all valid index tuples:
//   (1) g_{i,k} g_{j,k} = g_{j,k} g_{i,k}                (i, j, k distinct)
//   (2) g_{i,k} g_{j,l} = g_{j,l} g_{i,k}                (all four distinct)
//   (3) g_{i,k} g_{j,k} g_{i,j} = g_{i,j} g_{j,k} g_{i,k}^e
// with e = -1 in the EPA family and e = +1 in the PSA family.
inline std::vector<Relator> relator_instances(int n, PresentationFamily family) {
  if (n < 1) throw std::invalid_argument("rank must be >= 1");
  std::vector<Relator> out;
  for (int k = 1; k <= n; ++k)
    for (int i = 1; i <= n; ++i)
      for (int j = i + 1; j <= n; ++j) {
        if (i == k || j == k) continue;
        Relator r;
        r.kind = 1;
        r.indices = {i, j, k, 0};
        r.lhs = {{i, k, 1}, {j, k, 1}};
        r.rhs = {{j, k, 1}, {i, k, 1}};
        out.push_back(std::move(r));
      }
  for (int i = 1; i <= n; ++i)
    for (int k = 1; k <= n; ++k) {
      if (i == k) continue;
      // Unordered pair of factors: the smaller source index comes first.
      for (int j = i + 1; j <= n; ++j)
        for (int l = 1; l <= n; ++l) {
          if (j == l || j == k || l == i || l == k) continue;
          Relator r;
          r.kind = 2;
          r.indices = {i, k, j, l};
          r.lhs = {{i, k, 1}, {j, l, 1}};
          r.rhs = {{j, l, 1}, {i, k, 1}};
          out.push_back(std::move(r));
        }
    }
  int e = (family == PresentationFamily::EPA) ? -1 : 1;
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j)
      for (int k = 1; k <= n; ++k) {
        if (i == j || i == k || j == k) continue;
        Relator r;
        r.kind = 3;
        r.indices = {i, j, k, 0};
        r.lhs = {{i, k, 1}, {j, k, 1}, {i, j, 1}};
        r.rhs = {{i, j, 1}, {j, k, 1}, {i, k, e}};
        out.push_back(std::move(r));
      }
  return out;
}

inline Automorphism presentation_generator(PresentationFamily family, int i, int j, int exp, int n) {
  if (family == PresentationFamily::EPA)
    return exp > 0 ? Automorphism::elementary_palindromic(i, j, n)
                   : Automorphism::elementary_palindromic_inverse(i, j, n);
  return exp > 0 ? Automorphism::partial_conjugation(i, j, n)
                 : Automorphism::partial_conjugation_inverse(i, j, n);
}

inline Automorphism evaluate_side_l2r(const std::vector<PresentationLetter>& side,
                                      PresentationFamily family, int n) {
  std::vector<Automorphism> gens;
  gens.reserve(side.size());
  for (const PresentationLetter& l : side) gens.push_back(presentation_generator(family, l.i, l.j, l.exp, n));
  return product_left_to_right(gens, n);
}

inline Automorphism evaluate_side_r2l(const std::vector<PresentationLetter>& side,
                                      PresentationFamily family, int n) {
  std::vector<Automorphism> gens;
  gens.reserve(side.size());
  for (const PresentationLetter& l : side) gens.push_back(presentation_generator(family, l.i, l.j, l.exp, n));
  return product_right_to_left(gens, n);
}

struct RelatorInstanceResult {
  Relator relator;
  bool l2r_ok = false;
  bool r2l_ok = false;
};

struct RelatorReport {
  int n = 0;
  PresentationFamily family = PresentationFamily::EPA;
  std::vector<RelatorInstanceResult> instances;
  int l2r_failures = 0;
  int r2l_failures = 0;
  // The other family's kind-3 relator shape instantiated with this family's
  // generators; these are expected to fail, certifying the two presentations
  // genuinely differ.
  int cross_shape_total = 0;
  int cross_shape_failures = 0;

  bool all_pass() const { return l2r_failures == 0; }
};

// Checks every relator instance at rank n under both reading conventions.
// Words evaluate left to right: the first listed generator acts first.
inline RelatorReport verify_relators(int n, PresentationFamily family) {
  if (n < 1) throw std::invalid_argument("rank must be >= 1");
  RelatorReport rep;
  rep.n = n;
  rep.family = family;
  for (const Relator& r : relator_instances(n, family)) {
    RelatorInstanceResult res;
    res.relator = r;
    res.l2r_ok = evaluate_side_l2r(r.lhs, family, n) == evaluate_side_l2r(r.rhs, family, n);
    res.r2l_ok = evaluate_side_r2l(r.lhs, family, n) == evaluate_side_r2l(r.rhs, family, n);
    rep.l2r_failures += res.l2r_ok ? 0 : 1;
    rep.r2l_failures += res.r2l_ok ? 0 : 1;
    rep.instances.push_back(std::move(res));
  }
  PresentationFamily other =
      (family == PresentationFamily::EPA) ? PresentationFamily::PSA : PresentationFamily::EPA;
  for (const Relator& r : relator_instances(n, other)) {
    if (r.kind != 3) continue;  // the kind-3 shape is where the families differ
    ++rep.cross_shape_total;
    bool ok = evaluate_side_l2r(r.lhs, family, n) == evaluate_side_l2r(r.rhs, family, n);
    if (!ok) ++rep.cross_shape_failures;
  }
  return rep;
}

struct AbelianizationResult {
  int n = 0;
  PresentationFamily family = PresentationFamily::EPA;
  std::vector<Int> invariant_factors;  // nontrivial torsion factors
  int free_rank = 0;
};

// Abelianization of the presented group: Z^{n(n-1)} on the generators
// g_{i,j} modulo the abelianized relator rows.
inline AbelianizationResult abelianization_invariants(int n, PresentationFamily family) {
  if (n < 2) throw std::invalid_argument("rank must be >= 2");
  int gens = n * (n - 1);
  auto gen_index = [&](int i, int j) {  // ordered pairs (i, j), i != j
    int col = 0;
    for (int a = 1; a <= n; ++a)
      for (int b = 1; b <= n; ++b) {
        if (a == b) continue;
        if (a == i && b == j) return col;
        ++col;
      }
    throw std::logic_error("generator pair not found");
  };

  std::vector<Relator> rels = relator_instances(n, family);
  IntegerMatrix rows(static_cast<int>(rels.size()), gens);
  for (std::size_t r = 0; r < rels.size(); ++r) {
    for (const PresentationLetter& l : rels[r].lhs) rows.at(static_cast<int>(r), gen_index(l.i, l.j)) += l.exp;
    for (const PresentationLetter& l : rels[r].rhs) rows.at(static_cast<int>(r), gen_index(l.i, l.j)) -= l.exp;
  }
  SmithForm snf = smith_normal_form(rows);

  AbelianizationResult out;
  out.n = n;
  out.family = family;
  out.invariant_factors = snf.nontrivial_factors();
  out.free_rank = gens - snf.rank;
  return out;
}

struct WitnessReport {
  int n = 0, p = 0;
  bool involutions_ok = false;    // single-generator inversions: commuting involutions
  int p_cycle_count = 0;          // disjoint blocks of size p available in rank n
  bool p_cycles_ok = false;       // block rotations: order exactly p, commuting
  bool translations_ok = false;   // g_{i,n}: pairwise commuting, palindromic
  bool infinite_order_ok = false; // exponent-matrix powers of g_{1,n} never return to I
  bool all_ok() const {
    return involutions_ok && p_cycles_ok && translations_ok && infinite_order_ok;
  }
};

// Certifies the standard subgroups: an elementary abelian 2-group of rank n,
// commuting p-cycles, and a free abelian rank n-1 subgroup of infinite-order
// elements.  Every witness must centralize the full inversion.
inline WitnessReport witness_subgroups(int n, int p) {
  if (n < 2) throw std::invalid_argument("rank must be >= 2");
  if (!is_prime(p)) throw std::invalid_argument("p must be prime");
  WitnessReport rep;
  rep.n = n;
  rep.p = p;

  std::vector<Automorphism> invs;
  for (int i = 1; i <= n; ++i) invs.push_back(Automorphism::sigma_ai(i, n));
  rep.involutions_ok = true;
  for (const Automorphism& f : invs) {
    if (compose(f, f) != Automorphism::identity(n)) rep.involutions_ok = false;
    if (!is_palindromic_automorphism(f) || !verify_centralizes_sigma(f)) rep.involutions_ok = false;
  }
  for (std::size_t a = 0; a < invs.size(); ++a)
    for (std::size_t b = a + 1; b < invs.size(); ++b)
      if (compose(invs[a], invs[b]) != compose(invs[b], invs[a])) rep.involutions_ok = false;

  rep.p_cycle_count = n / p;
  rep.p_cycles_ok = true;
  std::vector<Automorphism> cycles;
  for (int b = 0; b < rep.p_cycle_count; ++b) {
    std::vector<int> perm(static_cast<std::size_t>(n));
    for (int i = 1; i <= n; ++i) perm[i - 1] = i;
    for (int i = 0; i < p; ++i) perm[b * p + i] = b * p + 1 + (i + 1) % p;
    cycles.push_back(Automorphism::permutation_automorphism(perm));
  }
  for (const Automorphism& c : cycles) {
    Automorphism acc = c;
    for (int k = 1; k < p; ++k) {
      if (acc == Automorphism::identity(n)) rep.p_cycles_ok = false;  // order must be exactly p
      acc = compose(c, acc);
    }
    if (acc != Automorphism::identity(n)) rep.p_cycles_ok = false;
    if (!is_palindromic_automorphism(c) || !verify_centralizes_sigma(c)) rep.p_cycles_ok = false;
  }
  for (std::size_t a = 0; a < cycles.size(); ++a)
    for (std::size_t b = a + 1; b < cycles.size(); ++b)
      if (compose(cycles[a], cycles[b]) != compose(cycles[b], cycles[a])) rep.p_cycles_ok = false;

  std::vector<Automorphism> trans;
  for (int i = 1; i < n; ++i) trans.push_back(Automorphism::elementary_palindromic(i, n, n));
  rep.translations_ok = true;
  for (const Automorphism& f : trans)
    if (!is_palindromic_automorphism(f) || !verify_centralizes_sigma(f)) rep.translations_ok = false;
  for (std::size_t a = 0; a < trans.size(); ++a)
    for (std::size_t b = a + 1; b < trans.size(); ++b)
      if (compose(trans[a], trans[b]) != compose(trans[b], trans[a])) rep.translations_ok = false;

  rep.infinite_order_ok = !trans.empty();
  IntegerMatrix m = exponent_matrix(trans.front());
  IntegerMatrix acc = m;
  for (int k = 1; k <= 64; ++k) {
    if (acc.is_identity()) rep.infinite_order_ok = false;
    acc = acc * m;
  }
  return rep;
}

struct NormalizerReport {
  int p = 0, m = 0, n = 0;
  bool palindromic_ok = false;         // each g_i lands in the palindromic family
  bool inverse_ok = false;             // explicit inverses compose to the identity
  bool rho_conjugation_ok = false;     // rho g_i rho^-1 == g_i
  bool sigma_conjugation_ok = false;   // sigma g_i sigma == g_i
  bool gi_normalizes_ok = false;       // g_i rho g_i^-1 == rho and g_i sigma g_i^-1 == sigma
  bool nonabelian_witness = false;     // m >= 2: g_1 and g_2 fail to commute
  bool all_ok() const {
    return palindromic_ok && inverse_ok && rho_conjugation_ok && sigma_conjugation_ok &&
           gi_normalizes_ok && (m < 2 || nonabelian_witness);
  }
};

// For rank n = p + m, g_i is the left-to-right product
// g_{1,p+i} g_{2,p+i} ... g_{p,p+i}; together with the block p-cycle rho and
// the full inversion sigma these generate inside the normalizer of <rho, sigma>.
inline NormalizerReport verify_normalizer_generators(int p, int m) {
  if (!is_prime(p)) throw std::invalid_argument("p must be prime");
  if (m < 1) throw std::invalid_argument("m must be >= 1");
  NormalizerReport rep;
  rep.p = p;
  rep.m = m;
  rep.n = p + m;
  int n = rep.n;

  std::vector<int> perm(static_cast<std::size_t>(n));
  for (int i = 1; i <= n; ++i) perm[i - 1] = i;
  for (int i = 0; i < p; ++i) perm[i] = 1 + (i + 1) % p;
  Automorphism rho = Automorphism::permutation_automorphism(perm);
  Automorphism rho_inv = Automorphism::permutation_automorphism([&] {
    std::vector<int> q(static_cast<std::size_t>(n));
    for (int i = 1; i <= n; ++i) q[perm[i - 1] - 1] = i;
    return q;
  }());
  Automorphism sigma = Automorphism::sigma_n(n);
  Automorphism id = Automorphism::identity(n);

  std::vector<Automorphism> g, g_inv;
  for (int i = 1; i <= m; ++i) {
    std::vector<Automorphism> factors, inv_factors;
    for (int k = 1; k <= p; ++k)
      factors.push_back(Automorphism::elementary_palindromic(k, p + i, n));
    for (int k = p; k >= 1; --k)
      inv_factors.push_back(Automorphism::elementary_palindromic_inverse(k, p + i, n));
    g.push_back(product_left_to_right(factors, n));
    g_inv.push_back(product_left_to_right(inv_factors, n));
  }

  rep.palindromic_ok = rep.inverse_ok = rep.rho_conjugation_ok = true;
  rep.sigma_conjugation_ok = rep.gi_normalizes_ok = true;
  for (int i = 0; i < m; ++i) {
    if (!is_palindromic_automorphism(g[i]) || !verify_centralizes_sigma(g[i]))
      rep.palindromic_ok = false;
    if (compose(g[i], g_inv[i]) != id || compose(g_inv[i], g[i]) != id) rep.inverse_ok = false;
    if (compose(rho, compose(g[i], rho_inv)) != g[i]) rep.rho_conjugation_ok = false;
    if (compose(sigma, compose(g[i], sigma)) != g[i]) rep.sigma_conjugation_ok = false;
    if (compose(g[i], compose(rho, g_inv[i])) != rho) rep.gi_normalizes_ok = false;
    if (compose(g[i], compose(sigma, g_inv[i])) != sigma) rep.gi_normalizes_ok = false;
  }
  if (m >= 2) rep.nonabelian_witness = compose(g[0], g[1]) != compose(g[1], g[0]);
  return rep;
}

}  // namespace palmod
