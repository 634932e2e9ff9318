#pragma once

// Small exact integer matrices (arbitrary precision) plus a sparse
// column-major form used for large boundary matrices.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <utility>
#include <vector>

namespace palmod {

using Int = boost::multiprecision::cpp_int;

class IntegerMatrix {
 public:
  IntegerMatrix() = default;
  IntegerMatrix(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<std::size_t>(rows) * cols) {
    if (rows < 0 || cols < 0) throw std::invalid_argument("matrix dimensions must be nonnegative");
  }

  static IntegerMatrix identity(int n) {
    IntegerMatrix m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  Int& at(int r, int c) { return a_[static_cast<std::size_t>(r) * cols_ + c]; }
  const Int& at(int r, int c) const { return a_[static_cast<std::size_t>(r) * cols_ + c]; }

  bool is_identity() const {
    if (rows_ != cols_) return false;
    for (int r = 0; r < rows_; ++r)
      for (int c = 0; c < cols_; ++c)
        if (at(r, c) != (r == c ? 1 : 0)) return false;
    return true;
  }

  friend IntegerMatrix operator*(const IntegerMatrix& x, const IntegerMatrix& y) {
    if (x.cols_ != y.rows_) throw std::invalid_argument("matrix product shape mismatch");
    IntegerMatrix z(x.rows_, y.cols_);
    for (int r = 0; r < x.rows_; ++r)
      for (int k = 0; k < x.cols_; ++k) {
        const Int& v = x.at(r, k);
        if (v == 0) continue;
        for (int c = 0; c < y.cols_; ++c) z.at(r, c) += v * y.at(k, c);
      }
    return z;
  }

  friend bool operator==(const IntegerMatrix&, const IntegerMatrix&) = default;

 private:
  int rows_ = 0, cols_ = 0;
  std::vector<Int> a_;
};

inline IntegerMatrix matrix_power(IntegerMatrix m, long long k) {
  if (m.rows() != m.cols()) throw std::invalid_argument("matrix power needs a square matrix");
  if (k < 0) throw std::invalid_argument("matrix power needs a nonnegative exponent");
  IntegerMatrix acc = IntegerMatrix::identity(m.rows());
  while (k > 0) {
    if (k & 1) acc = acc * m;
    m = m * m;
    k >>= 1;
  }
  return acc;
}

// Every column sum odd: the parity certificate satisfied by exponent
// matrices of palindromic automorphisms (images have odd total exponent).
inline bool column_parity_ok(const IntegerMatrix& m) {
  for (int c = 0; c < m.cols(); ++c) {
    Int s = 0;
    for (int r = 0; r < m.rows(); ++r) s += m.at(r, c);
    if (s % 2 == 0) return false;
  }
  return true;
}

// Sparse integer matrix stored per column as (row, value) pairs sorted by row.
struct SparseIntMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<std::vector<std::pair<int, std::int64_t>>> columns;  // entries fit int64 at build time

  SparseIntMatrix() = default;
  SparseIntMatrix(int r, int c) : rows(r), cols(c), columns(static_cast<std::size_t>(c)) {}

  std::size_t nonzero_count() const {
    std::size_t n = 0;
    for (const auto& col : columns) n += col.size();
    return n;
  }

  IntegerMatrix dense() const {
    IntegerMatrix m(rows, cols);
    for (int c = 0; c < cols; ++c)
      for (const auto& [r, v] : columns[c]) m.at(r, c) = v;
    return m;
  }
};

inline SparseIntMatrix sparse_from_dense(const IntegerMatrix& m) {
  SparseIntMatrix s(m.rows(), m.cols());
  for (int c = 0; c < m.cols(); ++c)
    for (int r = 0; r < m.rows(); ++r)
      if (m.at(r, c) != 0) {
        const Int& v = m.at(r, c);
        if (v > std::numeric_limits<std::int64_t>::max() || v < std::numeric_limits<std::int64_t>::min())
          throw std::overflow_error("entry too large for sparse storage");
        s.columns[c].push_back({r, v.convert_to<std::int64_t>()});
      }
  return s;
}

}  // namespace palmod
