#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "gdl/arith.hpp"

namespace gdl {

/// Column vector in (Z/N)^2; the modulus lives with the caller.
struct Vec2 {
  std::int64_t x = 0;
  std::int64_t y = 0;
  auto operator<=>(const Vec2&) const = default;
};

/// 2x2 matrix over Z/N, entries row-major [[a, b], [c, d]], always reduced.
struct Mat2 {
  std::int64_t a = 1, b = 0, c = 0, d = 1;

  auto operator<=>(const Mat2&) const = default;

  static Mat2 identity() { return {}; }
  static Mat2 reduced(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d, std::int64_t n) {
    return {mod(a, n), mod(b, n), mod(c, n), mod(d, n)};
  }
  /// Matrix with the given vectors as columns.
  static Mat2 from_columns(Vec2 u0, Vec2 u1) { return {u0.x, u1.x, u0.y, u1.y}; }

  Vec2 col0() const { return {a, c}; }
  Vec2 col1() const { return {b, d}; }

  std::int64_t det(std::int64_t n) const { return mod(mul_mod(a, d, n) - mul_mod(b, c, n), n); }
  std::int64_t trace(std::int64_t n) const { return mod(a + d, n); }
  bool is_scalar() const { return b == 0 && c == 0 && a == d; }
  std::array<std::int64_t, 4> entries() const { return {a, b, c, d}; }
};

inline Mat2 mul(const Mat2& l, const Mat2& r, std::int64_t n) {
  return Mat2::reduced(mul_mod(l.a, r.a, n) + mul_mod(l.b, r.c, n), mul_mod(l.a, r.b, n) + mul_mod(l.b, r.d, n),
                       mul_mod(l.c, r.a, n) + mul_mod(l.d, r.c, n), mul_mod(l.c, r.b, n) + mul_mod(l.d, r.d, n), n);
}

inline Vec2 apply(const Mat2& m, Vec2 v, std::int64_t n) {
  return {mod(mul_mod(m.a, v.x, n) + mul_mod(m.b, v.y, n), n), mod(mul_mod(m.c, v.x, n) + mul_mod(m.d, v.y, n), n)};
}

inline Vec2 add(Vec2 u, Vec2 v, std::int64_t n) { return {mod(u.x + v.x, n), mod(u.y + v.y, n)}; }
inline Vec2 sub(Vec2 u, Vec2 v, std::int64_t n) { return {mod(u.x - v.x, n), mod(u.y - v.y, n)}; }

/// Inverse over Z/N; throws NotInvertible when det is not a unit.
Mat2 inverse(const Mat2& m, std::int64_t n);

Mat2 power(Mat2 m, std::uint64_t e, std::int64_t n);

/// Every element of GL_2(Z/N) (det a unit), lexicographically ordered.
std::vector<Mat2> enumerate_gl2(std::int64_t n);
/// Every element of SL_2(Z/N), lexicographically ordered.
std::vector<Mat2> enumerate_sl2(std::int64_t n);

/// Dimension of the fixed space ker(m - 1) over F_p (p prime).
int fixed_space_dim(const Mat2& m, std::int64_t p);

std::string to_string(const Mat2& m);

}  // namespace gdl
