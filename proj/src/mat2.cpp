#include "gdl/mat2.hpp"

namespace gdl {

Mat2 inverse(const Mat2& m, std::int64_t n) {
  std::int64_t inv_det = inv_mod(m.det(n), n).value();
  return Mat2::reduced(mul_mod(m.d, inv_det, n), mul_mod(n - m.b, inv_det, n), mul_mod(n - m.c, inv_det, n),
                       mul_mod(m.a, inv_det, n), n);
}

Mat2 power(Mat2 m, std::uint64_t e, std::int64_t n) {
  Mat2 r = Mat2::reduced(1, 0, 0, 1, n);
  while (e) {
    if (e & 1U) r = mul(r, m, n);
    m = mul(m, m, n);
    e >>= 1U;
  }
  return r;
}

std::vector<Mat2> enumerate_gl2(std::int64_t n) {
  std::vector<Mat2> out;
  for (std::int64_t a = 0; a < n; ++a)
    for (std::int64_t b = 0; b < n; ++b)
      for (std::int64_t c = 0; c < n; ++c)
        for (std::int64_t d = 0; d < n; ++d) {
          Mat2 m{a, b, c, d};
          if (gcd(m.det(n), n) == 1) out.push_back(m);
        }
  return out;
}

std::vector<Mat2> enumerate_sl2(std::int64_t n) {
  std::vector<Mat2> out;
  for (std::int64_t a = 0; a < n; ++a)
    for (std::int64_t b = 0; b < n; ++b)
      for (std::int64_t c = 0; c < n; ++c)
        for (std::int64_t d = 0; d < n; ++d) {
          Mat2 m{a, b, c, d};
          if (m.det(n) == 1 % n) out.push_back(m);
        }
  return out;
}

int fixed_space_dim(const Mat2& m, std::int64_t p) {
  Mat2 shifted = Mat2::reduced(m.a - 1, m.b, m.c, m.d - 1, p);
  if (shifted.a == 0 && shifted.b == 0 && shifted.c == 0 && shifted.d == 0) return 2;
  return shifted.det(p) == 0 ? 1 : 0;
}

std::string to_string(const Mat2& m) {
  return "[[" + std::to_string(m.a) + "," + std::to_string(m.b) + "],[" + std::to_string(m.c) + "," +
         std::to_string(m.d) + "]]";
}

}  // namespace gdl
