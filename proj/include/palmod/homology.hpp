#pragma once

// Chain complexes and homology of quotient complexes: boundary operators
// with alternating signs over the face lists, homology over Z, Q, or a
// prime field.

#include "palmod/complex.hpp"
#include "palmod/matrix.hpp"
#include "palmod/snf.hpp"

#include <cstdlib>
#include <stdexcept>
#include <string>
#include <vector>

namespace palmod {

struct ChainComplex {
  std::vector<long long> dims;              // dims[r] = number of r-cells
  std::vector<SparseIntMatrix> boundaries;  // boundaries[r-1] = d_r, r = 1..top

  int top_dimension() const { return static_cast<int>(dims.size()) - 1; }
};

// The boundary of a cell is the signed sum of its faces; coincident faces
// accumulate.  Verifies d∘d = 0 before returning.
inline ChainComplex boundary_matrices(const QuotientComplex& q) {
  ChainComplex c;
  for (const auto& layer : q.cells) c.dims.push_back(static_cast<long long>(layer.size()));

  for (int r = 1; r <= q.dimension(); ++r) {
    SparseIntMatrix m(static_cast<int>(q.cells[r - 1].size()), static_cast<int>(q.cells[r].size()));
    for (std::size_t j = 0; j < q.cell_faces[r].size(); ++j) {
      std::map<int, std::int64_t> col;
      const auto& fl = q.cell_faces[r][j];
      for (std::size_t i = 0; i < fl.size(); ++i) col[fl[i]] += (i % 2 == 0) ? 1 : -1;
      for (const auto& [row, v] : col)
        if (v != 0) m.columns[j].push_back({row, v});
    }
    c.boundaries.push_back(std::move(m));
  }

  // d_{r} ∘ d_{r+1} must vanish
  for (std::size_t r = 0; r + 1 < c.boundaries.size(); ++r) {
    const SparseIntMatrix& a = c.boundaries[r];
    const SparseIntMatrix& b = c.boundaries[r + 1];
    for (int j = 0; j < b.cols; ++j) {
      std::map<int, std::int64_t> acc;
      for (const auto& [k, bv] : b.columns[j])
        for (const auto& [i, av] : a.columns[k]) acc[i] += av * bv;
      for (const auto& [i, v] : acc)
        if (v != 0) throw std::logic_error("boundary of a boundary is nonzero");
    }
  }
  return c;
}

struct Coefficients {
  enum class Kind { Integers, Rationals, PrimeField };
  Kind kind = Kind::Integers;
  long long p = 0;

  static Coefficients integers() { return {Kind::Integers, 0}; }
  static Coefficients rationals() { return {Kind::Rationals, 0}; }
  static Coefficients prime_field(long long p) {
    if (!is_prime(p)) throw std::invalid_argument("field characteristic must be prime");
    return {Kind::PrimeField, p};
  }

  // Accepts "Z", "Q", or "Fp:<prime>".
  static Coefficients parse(const std::string& s) {
    if (s == "Z") return integers();
    if (s == "Q") return rationals();
    if (s.rfind("Fp:", 0) == 0) {
      std::size_t used = 0;
      long long p = 0;
      try {
        p = std::stoll(s.substr(3), &used);
      } catch (const std::exception&) {
        throw std::invalid_argument("bad coefficient spec: " + s);
      }
      if (used != s.size() - 3) throw std::invalid_argument("bad coefficient spec: " + s);
      return prime_field(p);
    }
    throw std::invalid_argument("bad coefficient spec: " + s);
  }

  std::string str() const {
    switch (kind) {
      case Kind::Integers: return "Z";
      case Kind::Rationals: return "Q";
      case Kind::PrimeField: return "Fp:" + std::to_string(p);
    }
    throw std::logic_error("unknown coefficient kind");
  }

  friend bool operator==(const Coefficients&, const Coefficients&) = default;
};

struct DegreeHomology {
  long long betti = 0;
  std::vector<Int> torsion;  // nontrivial invariant factors; empty over fields
};

struct HomologyResult {
  Coefficients coeff;
  std::vector<DegreeHomology> degrees;  // indexed by homological degree

  bool reduced_trivial() const {
    if (degrees.empty() || degrees[0].betti != 1 || !degrees[0].torsion.empty()) return false;
    for (std::size_t r = 1; r < degrees.size(); ++r)
      if (degrees[r].betti != 0 || !degrees[r].torsion.empty()) return false;
    return true;
  }
};

inline HomologyResult homology(const ChainComplex& c, Coefficients coeff) {
  int top = c.top_dimension();
  std::vector<int> rank(static_cast<std::size_t>(top) + 2, 0);  // rank[r] = rank d_r
  std::vector<std::vector<Int>> torsion(static_cast<std::size_t>(top) + 2);

  for (int r = 1; r <= top; ++r) {
    const SparseIntMatrix& m = c.boundaries[static_cast<std::size_t>(r - 1)];
    if (coeff.kind == Coefficients::Kind::PrimeField) {
      rank[r] = rank_mod_p(m, coeff.p);
    } else {
      SmithForm sf = smith_normal_form(m);
      rank[r] = sf.rank;
      torsion[r] = sf.nontrivial_factors();
    }
  }

  HomologyResult out;
  out.coeff = coeff;
  for (int r = 0; r <= top; ++r) {
    DegreeHomology h;
    h.betti = c.dims[static_cast<std::size_t>(r)] - rank[r] - rank[r + 1];
    if (coeff.kind == Coefficients::Kind::Integers) h.torsion = torsion[r + 1];
    out.degrees.push_back(std::move(h));
  }
  return out;
}

inline HomologyResult homology(const QuotientComplex& q, Coefficients coeff) {
  return homology(boundary_matrices(q), coeff);
}

}  // namespace palmod
