#pragma once

// Smith normal form over Z and ranks over prime fields.
//
// Two engines share the result type: a dense textbook reduction that can
// carry the left/right transform matrices, and a sparse map-based reduction
// (minimum-absolute-value pivot, fill-aware tie break) for the large
// boundary matrices, where dense arithmetic would be prohibitive.

#include "palmod/matrix.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <vector>

namespace palmod {

inline bool is_prime(long long v) {
  if (v < 2) return false;
  for (long long d = 2; d * d <= v; ++d)
    if (v % d == 0) return false;
  return true;
}

struct SmithForm {
  std::vector<Int> invariant_factors;  // nonzero, each dividing the next
  int rank = 0;
  std::optional<IntegerMatrix> left;   // U with U * M * V diagonal
  std::optional<IntegerMatrix> right;  // V

  // Entries strictly greater than 1 (the torsion content).
  std::vector<Int> nontrivial_factors() const {
    std::vector<Int> out;
    for (const Int& d : invariant_factors)
      if (d > 1) out.push_back(d);
    return out;
  }
};

namespace detail {

// Quotient rounded to nearest, so the remainder satisfies 2|r| <= |b|.
inline Int round_quotient(const Int& a, const Int& b) {
  Int q = a / b;
  Int r = a - q * b;
  if (2 * abs(r) > abs(b)) q += ((r > 0) == (b > 0)) ? 1 : -1;
  return q;
}

// Diagonal entries of any diagonalization normalize to invariant factors by
// repeated gcd/lcm exchanges (per-prime min/max sorting).
inline std::vector<Int> chain_divisibility(std::vector<Int> d) {
  for (Int& v : d) v = abs(v);
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i + 1 < d.size(); ++i)
      for (std::size_t j = i + 1; j < d.size(); ++j)
        if (d[j] % d[i] != 0) {
          Int g = gcd(d[i], d[j]);
          Int l = d[i] / g * d[j];
          d[i] = g;
          d[j] = l;
          changed = true;
        }
  }
  std::sort(d.begin(), d.end());
  return d;
}

}  // namespace detail

// Dense reduction; used for small matrices and whenever transforms are wanted.
inline SmithForm smith_normal_form(const IntegerMatrix& input, bool retain_transforms = false) {
  IntegerMatrix a = input;
  int rows = a.rows(), cols = a.cols();
  IntegerMatrix u, v;
  if (retain_transforms) {
    u = IntegerMatrix::identity(rows);
    v = IntegerMatrix::identity(cols);
  }

  auto swap_rows = [&](int x, int y) {
    if (x == y) return;
    for (int c = 0; c < cols; ++c) std::swap(a.at(x, c), a.at(y, c));
    if (retain_transforms)
      for (int c = 0; c < rows; ++c) std::swap(u.at(x, c), u.at(y, c));
  };
  auto swap_cols = [&](int x, int y) {
    if (x == y) return;
    for (int r = 0; r < rows; ++r) std::swap(a.at(r, x), a.at(r, y));
    if (retain_transforms)
      for (int r = 0; r < cols; ++r) std::swap(v.at(r, x), v.at(r, y));
  };
  auto add_row = [&](int dst, int src, const Int& q) {  // row dst -= q * row src
    if (q == 0) return;
    for (int c = 0; c < cols; ++c) a.at(dst, c) -= q * a.at(src, c);
    if (retain_transforms)
      for (int c = 0; c < rows; ++c) u.at(dst, c) -= q * u.at(src, c);
  };
  auto add_col = [&](int dst, int src, const Int& q) {  // col dst -= q * col src
    if (q == 0) return;
    for (int r = 0; r < rows; ++r) a.at(r, dst) -= q * a.at(r, src);
    if (retain_transforms)
      for (int r = 0; r < cols; ++r) v.at(r, dst) -= q * v.at(r, src);
  };

  int t = 0;
  int bound = std::min(rows, cols);
  std::vector<Int> diag;
  while (t < bound) {
    // Smallest nonzero entry of the trailing block becomes the pivot.
    int pr = -1, pc = -1;
    for (int r = t; r < rows; ++r)
      for (int c = t; c < cols; ++c)
        if (a.at(r, c) != 0 && (pr < 0 || abs(a.at(r, c)) < abs(a.at(pr, pc)))) {
          pr = r;
          pc = c;
        }
    if (pr < 0) break;
    swap_rows(t, pr);
    swap_cols(t, pc);

    bool settled = false;
    while (!settled) {
      settled = true;
      for (int r = t + 1; r < rows; ++r) {
        if (a.at(r, t) == 0) continue;
        Int q = detail::round_quotient(a.at(r, t), a.at(t, t));
        add_row(r, t, q);
        if (a.at(r, t) != 0) {  // remainder is strictly smaller: promote it
          swap_rows(t, r);
          settled = false;
        }
      }
      for (int c = t + 1; c < cols; ++c) {
        if (a.at(t, c) == 0) continue;
        Int q = detail::round_quotient(a.at(t, c), a.at(t, t));
        add_col(c, t, q);
        if (a.at(t, c) != 0) {
          swap_cols(t, c);
          settled = false;
        }
      }
      if (settled) {
        // Pivot must divide the rest of the block; fold a violator into row t.
        for (int r = t + 1; r < rows && settled; ++r)
          for (int c = t + 1; c < cols && settled; ++c)
            if (a.at(r, c) % a.at(t, t) != 0) {
              add_row(t, r, Int(-1));
              settled = false;
            }
      }
    }
    if (a.at(t, t) < 0) {
      for (int c = t; c < cols; ++c) a.at(t, c) = -a.at(t, c);
      if (retain_transforms)
        for (int c = 0; c < rows; ++c) u.at(t, c) = -u.at(t, c);
    }
    diag.push_back(a.at(t, t));
    ++t;
  }

  SmithForm out;
  out.invariant_factors = detail::chain_divisibility(diag);
  out.rank = static_cast<int>(out.invariant_factors.size());
  if (retain_transforms) {
    out.left = std::move(u);
    out.right = std::move(v);
  }
  return out;
}

// Sparse reduction without transforms.  Rows live in ordered maps; a per
// column row-index lives in sets so pivots and eliminations stay local.
inline SmithForm smith_normal_form(const SparseIntMatrix& input) {
  int rows = input.rows, cols = input.cols;
  std::vector<std::map<int, Int>> row(static_cast<std::size_t>(rows));
  std::vector<std::set<int>> col_rows(static_cast<std::size_t>(cols));
  for (int c = 0; c < cols; ++c)
    for (const auto& [r, val] : input.columns[c]) {
      row[r][c] = val;
      col_rows[c].insert(r);
    }

  auto set_entry = [&](int r, int c, const Int& val) {
    if (val == 0) {
      row[r].erase(c);
      col_rows[c].erase(r);
    } else {
      row[r][c] = val;
      col_rows[c].insert(r);
    }
  };
  auto entry = [&](int r, int c) -> Int {
    auto it = row[r].find(c);
    return it == row[r].end() ? Int(0) : it->second;
  };
  // row dst -= q * row src
  auto add_row = [&](int dst, int src, const Int& q) {
    if (q == 0) return;
    for (const auto& [c, val] : row[src]) {
      Int nv = entry(dst, c) - q * val;
      set_entry(dst, c, nv);
    }
  };

  std::vector<char> row_done(static_cast<std::size_t>(rows), 0);
  std::vector<char> col_done(static_cast<std::size_t>(cols), 0);
  std::vector<Int> diag;

  while (true) {
    // Pivot search: minimum |value|; among those, least fill (Markowitz).
    int pr = -1, pc = -1;
    Int pabs = 0;
    long long pfill = 0;
    for (int r = 0; r < rows; ++r) {
      if (row_done[r]) continue;
      for (const auto& [c, val] : row[r]) {
        Int av = abs(val);
        long long fill = (static_cast<long long>(row[r].size()) - 1) *
                         (static_cast<long long>(col_rows[c].size()) - 1);
        if (pr < 0 || av < pabs || (av == pabs && fill < pfill)) {
          pr = r;
          pc = c;
          pabs = av;
          pfill = fill;
        }
      }
    }
    if (pr < 0) break;

    while (true) {
      // Clear the pivot column with row operations, gcd-style.
      bool column_clear = false;
      while (!column_clear) {
        column_clear = true;
        std::vector<int> others(col_rows[pc].begin(), col_rows[pc].end());
        for (int r : others) {
          if (r == pr) continue;
          Int pv = entry(pr, pc);
          Int v = entry(r, pc);
          if (v == 0) continue;
          Int q = detail::round_quotient(v, pv);
          add_row(r, pr, q);
          if (entry(r, pc) != 0) {  // smaller remainder takes over as pivot row
            pr = r;
            column_clear = false;
            break;
          }
        }
      }
      // The pivot column now has a single entry, so clearing the pivot row
      // with column operations touches only the pivot row itself.
      Int pv = entry(pr, pc);
      int new_pc = -1;
      Int best = 0;
      std::vector<std::pair<int, Int>> row_entries(row[pr].begin(), row[pr].end());
      for (auto& [c, val] : row_entries) {
        if (c == pc) continue;
        Int q = detail::round_quotient(val, pv);
        Int rem = val - q * pv;
        set_entry(pr, c, rem);
        if (rem != 0 && (new_pc < 0 || abs(rem) < best)) {
          new_pc = c;
          best = abs(rem);
        }
      }
      if (new_pc < 0) break;  // row and column both clear
      pc = new_pc;            // strictly smaller pivot; redo column pass
    }

    diag.push_back(abs(entry(pr, pc)));
    set_entry(pr, pc, Int(0));
    row_done[pr] = 1;
    col_done[pc] = 1;
  }

  SmithForm out;
  out.invariant_factors = detail::chain_divisibility(diag);
  out.rank = static_cast<int>(out.invariant_factors.size());
  return out;
}

// Rank over F_p via sparse modular elimination.  p must be prime (callers
// validate); arithmetic stays within int64 for p below 2^31.
inline int rank_mod_p(const SparseIntMatrix& input, long long p) {
  if (p < 2) throw std::invalid_argument("modulus must be >= 2");
  int rows = input.rows, cols = input.cols;
  auto norm = [&](std::int64_t v) { return ((v % p) + p) % p; };

  std::vector<std::map<int, std::int64_t>> row(static_cast<std::size_t>(rows));
  std::vector<std::set<int>> col_rows(static_cast<std::size_t>(cols));
  for (int c = 0; c < cols; ++c)
    for (const auto& [r, val] : input.columns[c]) {
      std::int64_t v = norm(val);
      if (v != 0) {
        row[r][c] = v;
        col_rows[c].insert(r);
      }
    }

  auto inv_mod = [&](std::int64_t a) {
    std::int64_t t = 0, nt = 1, r = p, nr = a % p;
    while (nr != 0) {
      std::int64_t q = r / nr;
      std::swap(t -= q * nt, nt);
      std::swap(r -= q * nr, nr);
    }
    return norm(t);
  };

  int rank = 0;
  std::vector<char> row_done(static_cast<std::size_t>(rows), 0);
  for (int pc = 0; pc < cols; ++pc) {
    // Sparsest available row in this column becomes the pivot row.
    int pr = -1;
    std::size_t best = 0;
    for (int r : col_rows[pc])
      if (!row_done[r] && (pr < 0 || row[r].size() < best)) {
        pr = r;
        best = row[r].size();
      }
    if (pr < 0) continue;
    ++rank;
    row_done[pr] = 1;

    std::int64_t scale = inv_mod(row[pr][pc]);
    std::vector<int> victims(col_rows[pc].begin(), col_rows[pc].end());
    for (int r : victims) {
      if (r == pr || row_done[r]) continue;
      std::int64_t factor = norm(row[r][pc] * scale % p);
      if (factor == 0) continue;
      for (const auto& [c, val] : row[pr]) {
        auto it = row[r].find(c);
        std::int64_t cur = (it == row[r].end()) ? 0 : it->second;
        std::int64_t nv = norm(cur - factor * val % p);
        if (nv == 0) {
          if (it != row[r].end()) {
            row[r].erase(it);
            col_rows[c].erase(r);
          }
        } else {
          row[r][c] = nv;
          col_rows[c].insert(r);
        }
      }
    }
    // Retire the pivot row's entries from the column index.
    for (const auto& [c, val] : row[pr]) col_rows[c].erase(pr);
  }
  return rank;
}

}  // namespace palmod
