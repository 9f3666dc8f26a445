#include "gdl/int_matrix.hpp"

#include <sstream>
#include <stdexcept>

namespace gdl {

namespace {

BigInt abs_big(const BigInt& x) { return x < 0 ? BigInt(-x) : x; }

// Euclidean quotient rounding toward zero; enough to strictly shrink remainders.
BigInt quotient(const BigInt& a, const BigInt& b) { return a / b; }

}  // namespace

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long long>> rows)
    : rows_(rows.size()), cols_(rows.size() ? rows.begin()->size() : 0) {
  data_.reserve(rows_ * cols_);
  for (const auto& row : rows) {
    if (row.size() != cols_) throw std::invalid_argument("ragged matrix literal");
    for (long long v : row) data_.emplace_back(v);
  }
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_columns(std::size_t rows, const std::vector<std::vector<BigInt>>& columns) {
  IntMatrix m(rows, columns.size());
  for (std::size_t j = 0; j < columns.size(); ++j) {
    if (columns[j].size() != rows) throw std::invalid_argument("column length mismatch");
    for (std::size_t i = 0; i < rows; ++i) m(i, j) = columns[j][i];
  }
  return m;
}

bool IntMatrix::is_zero() const {
  for (const auto& v : data_)
    if (v != 0) return false;
  return true;
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

std::vector<BigInt> IntMatrix::column(std::size_t j) const {
  std::vector<BigInt> c(rows_);
  for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
  return c;
}

void IntMatrix::swap_rows(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
}

void IntMatrix::swap_cols(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
}

void IntMatrix::add_row_multiple(std::size_t dst, std::size_t src, const BigInt& k) {
  if (k == 0) return;
  for (std::size_t j = 0; j < cols_; ++j) (*this)(dst, j) += k * (*this)(src, j);
}

void IntMatrix::add_col_multiple(std::size_t dst, std::size_t src, const BigInt& k) {
  if (k == 0) return;
  for (std::size_t i = 0; i < rows_; ++i) (*this)(i, dst) += k * (*this)(i, src);
}

void IntMatrix::negate_row(std::size_t i) {
  for (std::size_t j = 0; j < cols_; ++j) (*this)(i, j) = -(*this)(i, j);
}

IntMatrix IntMatrix::operator*(const IntMatrix& o) const {
  if (cols_ != o.rows_) throw std::invalid_argument("matrix shape mismatch in product");
  IntMatrix r(rows_, o.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const BigInt& a = (*this)(i, k);
      if (a == 0) continue;
      for (std::size_t j = 0; j < o.cols_; ++j) r(i, j) += a * o(k, j);
    }
  return r;
}

std::string IntMatrix::str() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < rows_; ++i) {
    os << (i ? ", [" : "[");
    for (std::size_t j = 0; j < cols_; ++j) os << (j ? ", " : "") << (*this)(i, j);
    os << ']';
  }
  os << ']';
  return os.str();
}

BigInt determinant(const IntMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("determinant of non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  IntMatrix a = m;
  BigInt sign = 1;
  BigInt prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t swap_with = k + 1;
      while (swap_with < n && a(swap_with, k) == 0) ++swap_with;
      if (swap_with == n) return 0;
      a.swap_rows(k, swap_with);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

SmithForm smith_normal_form(const IntMatrix& m) {
  const std::size_t rows = m.rows(), cols = m.cols();
  SmithForm out{IntMatrix::identity(rows), m, IntMatrix::identity(cols), 0};
  IntMatrix& D = out.D;
  IntMatrix& U = out.U;
  IntMatrix& V = out.V;

  const std::size_t steps = std::min(rows, cols);
  bool exhausted = false;
  for (std::size_t t = 0; t < steps && !exhausted; ++t) {
    for (;;) {
      // smallest nonzero |entry| in the active block; first in (row, col) order wins ties
      bool found = false;
      std::size_t pr = 0, pc = 0;
      BigInt best;
      for (std::size_t i = t; i < rows; ++i)
        for (std::size_t j = t; j < cols; ++j) {
          if (D(i, j) == 0) continue;
          BigInt a = abs_big(D(i, j));
          if (!found || a < best) {
            found = true;
            best = a;
            pr = i;
            pc = j;
          }
        }
      if (!found) {
        exhausted = true;
        break;
      }
      D.swap_rows(t, pr);
      U.swap_rows(t, pr);
      D.swap_cols(t, pc);
      V.swap_cols(t, pc);

      bool dirty = false;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (D(i, t) == 0) continue;
        BigInt q = quotient(D(i, t), D(t, t));
        D.add_row_multiple(i, t, -q);
        U.add_row_multiple(i, t, -q);
        if (D(i, t) != 0) dirty = true;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (D(t, j) == 0) continue;
        BigInt q = quotient(D(t, j), D(t, t));
        D.add_col_multiple(j, t, -q);
        V.add_col_multiple(j, t, -q);
        if (D(t, j) != 0) dirty = true;
      }
      if (dirty) continue;

      // pivot must divide the remaining block
      bool fixed = false;
      for (std::size_t i = t + 1; i < rows && !fixed; ++i)
        for (std::size_t j = t + 1; j < cols; ++j) {
          if (D(i, j) % D(t, t) != 0) {
            D.add_row_multiple(t, i, 1);
            U.add_row_multiple(t, i, 1);
            fixed = true;
            break;
          }
        }
      if (!fixed) break;
    }
    if (exhausted) break;
    if (D(t, t) < 0) {
      D.negate_row(t);
      U.negate_row(t);
    }
    out.rank = t + 1;
  }
  return out;
}

std::size_t rank(const IntMatrix& m) { return smith_normal_form(m).rank; }

IntMatrix unimodular_inverse(const IntMatrix& u) {
  if (u.rows() != u.cols()) throw std::invalid_argument("inverse of non-square matrix");
  // S u T = I for unimodular u, hence u^{-1} = T S
  SmithForm s = smith_normal_form(u);
  for (std::size_t i = 0; i < u.rows(); ++i)
    if (s.D(i, i) != 1) throw std::invalid_argument("matrix is not unimodular");
  return s.V * s.U;
}

IntMatrix saturation(const IntMatrix& m) {
  if (m.cols() == 0 || m.rows() == 0) return IntMatrix(m.rows(), 0);
  SmithForm s = smith_normal_form(m);
  IntMatrix u_inv = unimodular_inverse(s.U);
  IntMatrix basis(m.rows(), s.rank);
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < s.rank; ++j) basis(i, j) = u_inv(i, j);
  return basis;
}

IntMatrix row_hermite_form(const IntMatrix& m) {
  IntMatrix a = m;
  const std::size_t rows = a.rows(), cols = a.cols();
  std::size_t pivot_row = 0;
  std::vector<std::size_t> pivot_cols;
  for (std::size_t c = 0; c < cols && pivot_row < rows; ++c) {
    // gcd-reduce column c below pivot_row into a single entry
    for (;;) {
      std::size_t best = rows;
      for (std::size_t i = pivot_row; i < rows; ++i) {
        if (a(i, c) == 0) continue;
        if (best == rows || abs_big(a(i, c)) < abs_big(a(best, c))) best = i;
      }
      if (best == rows) break;
      a.swap_rows(pivot_row, best);
      bool more = false;
      for (std::size_t i = pivot_row + 1; i < rows; ++i) {
        if (a(i, c) == 0) continue;
        a.add_row_multiple(i, pivot_row, -quotient(a(i, c), a(pivot_row, c)));
        if (a(i, c) != 0) more = true;
      }
      if (!more) break;
    }
    if (a(pivot_row, c) == 0) continue;
    if (a(pivot_row, c) < 0) a.negate_row(pivot_row);
    for (std::size_t i = 0; i < pivot_row; ++i) {
      BigInt q = a(i, c) / a(pivot_row, c);
      if (a(i, c) - q * a(pivot_row, c) < 0) q -= 1;
      a.add_row_multiple(i, pivot_row, -q);
    }
    pivot_cols.push_back(c);
    ++pivot_row;
  }
  IntMatrix out(pivot_row, cols);
  for (std::size_t i = 0; i < pivot_row; ++i)
    for (std::size_t j = 0; j < cols; ++j) out(i, j) = a(i, j);
  return out;
}

bool same_column_span(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows() != b.rows()) return false;
  return row_hermite_form(a.transpose()) == row_hermite_form(b.transpose());
}

bool in_column_span(const IntMatrix& m, const std::vector<BigInt>& v) {
  if (v.size() != m.rows()) throw std::invalid_argument("vector length mismatch");
  std::vector<std::vector<BigInt>> cols;
  for (std::size_t j = 0; j < m.cols(); ++j) cols.push_back(m.column(j));
  IntMatrix without = IntMatrix::from_columns(m.rows(), cols);
  cols.push_back(v);
  IntMatrix with = IntMatrix::from_columns(m.rows(), cols);
  return same_column_span(without, with);
}

}  // namespace gdl
