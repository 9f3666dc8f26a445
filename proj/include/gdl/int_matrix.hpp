#pragma once

#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

#include "gdl/arith.hpp"

namespace gdl {

/// Dense row-major matrix of arbitrary-precision integers. A matrix may have
/// zero rows or zero columns (the empty basis of a sublattice).
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  IntMatrix(std::initializer_list<std::initializer_list<long long>> rows);

  static IntMatrix identity(std::size_t n);
  /// Matrix whose columns are the given vectors (all of length `rows`).
  static IntMatrix from_columns(std::size_t rows, const std::vector<std::vector<BigInt>>& columns);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool empty() const noexcept { return data_.empty(); }

  BigInt& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const BigInt& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  bool is_zero() const;
  IntMatrix transpose() const;
  std::vector<BigInt> column(std::size_t j) const;

  void swap_rows(std::size_t a, std::size_t b);
  void swap_cols(std::size_t a, std::size_t b);
  /// row[dst] += k * row[src]
  void add_row_multiple(std::size_t dst, std::size_t src, const BigInt& k);
  /// col[dst] += k * col[src]
  void add_col_multiple(std::size_t dst, std::size_t src, const BigInt& k);
  void negate_row(std::size_t i);

  IntMatrix operator*(const IntMatrix& o) const;
  bool operator==(const IntMatrix& o) const = default;

  std::string str() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<BigInt> data_;
};

/// Exact determinant (Bareiss fraction-free elimination). Square input only.
BigInt determinant(const IntMatrix& m);

struct SmithForm {
  IntMatrix U;  // rows x rows, unimodular
  IntMatrix D;  // rows x cols, diagonal, d_i | d_{i+1}, d_i >= 0
  IntMatrix V;  // cols x cols, unimodular
  std::size_t rank = 0;
};

/// U * M * V = D. Pivot: smallest nonzero absolute value in the active block,
/// ties broken by (row, col).
SmithForm smith_normal_form(const IntMatrix& m);

std::size_t rank(const IntMatrix& m);

/// Inverse of a unimodular square matrix.
IntMatrix unimodular_inverse(const IntMatrix& u);

/// Basis (as columns) of {v : k v in colspan(M) for some k >= 1}.
IntMatrix saturation(const IntMatrix& m);

/// Row-style Hermite normal form of the row span, zero rows dropped. Pivots
/// are positive; entries above a pivot are reduced into [0, pivot).
IntMatrix row_hermite_form(const IntMatrix& m);

/// Column spans compared through their canonical Hermite bases.
bool same_column_span(const IntMatrix& a, const IntMatrix& b);

/// Is the integer vector v in the column span of m.
bool in_column_span(const IntMatrix& m, const std::vector<BigInt>& v);

}  // namespace gdl
