#pragma once

// Brute-force reference computations shared by the unit tests and the
// acceptance runner. Nothing here calls the routine it is used to check.

#include <algorithm>
#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <vector>

#include "gdl/int_matrix.hpp"
#include "gdl/lattice.hpp"
#include "gdl/mat2.hpp"

namespace oracle {

using gdl::Mat2;

/// Search SL_2(Z/M) for L = 1 mod n with L u_i = u'_i.
inline bool transfer_by_search(const std::vector<Mat2>& sl2, const gdl::GeneratorPair& from,
                               const gdl::GeneratorPair& to, std::int64_t n) {
  const std::int64_t m = from.modulus();
  for (const Mat2& l : sl2) {
    if ((l.a - 1) % n != 0 || l.b % n != 0 || l.c % n != 0 || (l.d - 1) % n != 0) continue;
    if (gdl::apply(l, from.u0(), m) == to.u0() && gdl::apply(l, from.u1(), m) == to.u1()) return true;
  }
  return false;
}

/// Orbit count of a finite matrix group (given as its full element list)
/// acting on det-1 pairs: orbits are swept out element by element.
inline std::size_t orbit_count_by_sweep(std::int64_t n, const std::vector<Mat2>& group) {
  std::set<Mat2> unseen;
  for (const Mat2& m : gdl::enumerate_sl2(n)) unseen.insert(m);
  std::size_t orbits = 0;
  while (!unseen.empty()) {
    Mat2 start = *unseen.begin();
    ++orbits;
    for (const Mat2& g : group) unseen.erase(gdl::mul(g, start, n));
  }
  return orbits;
}

/// Random integer matrix with entries in [-bound, bound].
inline gdl::IntMatrix random_int_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols, int bound) {
  std::uniform_int_distribution<int> d(-bound, bound);
  gdl::IntMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = d(rng);
  return m;
}

/// Integer vectors of length n with entries in [-box, box].
inline std::vector<std::vector<gdl::BigInt>> box_vectors(std::size_t n, int box) {
  std::vector<std::vector<gdl::BigInt>> out{{}};
  for (std::size_t k = 0; k < n; ++k) {
    std::vector<std::vector<gdl::BigInt>> next;
    for (const auto& v : out)
      for (int x = -box; x <= box; ++x) {
        auto w = v;
        w.push_back(x);
        next.push_back(std::move(w));
      }
    out = std::move(next);
  }
  return out;
}

inline bool kills(const gdl::IntMatrix& f, const std::vector<gdl::BigInt>& v) {
  for (std::size_t i = 0; i < f.rows(); ++i) {
    gdl::BigInt s = 0;
    for (std::size_t j = 0; j < f.cols(); ++j) s += f(i, j) * v[j];
    if (s != 0) return false;
  }
  return true;
}

/// Some multiple k v with 1 <= k <= kmax lies in span(B).
inline bool multiple_in_span(const gdl::IntMatrix& b, const std::vector<gdl::BigInt>& v, int kmax) {
  for (int k = 1; k <= kmax; ++k) {
    std::vector<gdl::BigInt> w;
    for (const auto& x : v) w.push_back(x * k);
    if (gdl::in_column_span(b, w)) return true;
  }
  return false;
}

// Invariant factors from determinantal divisors: D_k = gcd of all k x k
// minors, d_k = D_k / D_{k-1}. Independent of any elimination order.
inline gdl::BigInt minor(const gdl::IntMatrix& m, const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols) {
  gdl::IntMatrix s(rows.size(), cols.size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j) s(i, j) = m(rows[i], cols[j]);
  return gdl::determinant(s);
}

inline void subsets(std::size_t n, std::size_t k, std::size_t from, std::vector<std::size_t>& cur,
             std::vector<std::vector<std::size_t>>& out) {
  if (cur.size() == k) {
    out.push_back(cur);
    return;
  }
  for (std::size_t i = from; i < n; ++i) {
    cur.push_back(i);
    subsets(n, k, i + 1, cur, out);
    cur.pop_back();
  }
}

inline std::vector<gdl::BigInt> invariant_factors_by_minors(const gdl::IntMatrix& m) {
  std::vector<gdl::BigInt> out;
  gdl::BigInt prev = 1;
  for (std::size_t k = 1; k <= std::min(m.rows(), m.cols()); ++k) {
    std::vector<std::vector<std::size_t>> rs, cs;
    std::vector<std::size_t> cur;
    subsets(m.rows(), k, 0, cur, rs);
    subsets(m.cols(), k, 0, cur, cs);
    gdl::BigInt g = 0;
    for (const auto& r : rs)
      for (const auto& c : cs) g = boost::multiprecision::gcd(g, minor(m, r, c));
    if (g == 0) {
      out.push_back(0);
      prev = 0;
      continue;
    }
    out.push_back(g / prev);
    prev = g;
  }
  return out;
}

/// SL_2(Z/M) by testing all M^4 matrices.
inline std::vector<Mat2> sl2_by_search(std::int64_t m) {
  std::vector<Mat2> out;
  for (std::int64_t a = 0; a < m; ++a)
    for (std::int64_t b = 0; b < m; ++b)
      for (std::int64_t c = 0; c < m; ++c)
        for (std::int64_t d = 0; d < m; ++d)
          if (((a * d - b * c) % m + m) % m == 1 % m) out.push_back({a, b, c, d});
  return out;
}

/// |E(F_p)| for y^2 = x^3 + a x + b from a table of squares.
inline std::int64_t point_count_by_search(std::int64_t a, std::int64_t b, std::int64_t p) {
  std::vector<int> roots(static_cast<std::size_t>(p), 0);
  for (std::int64_t y = 0; y < p; ++y) ++roots[static_cast<std::size_t>(y * y % p)];
  std::int64_t n = 1;
  for (std::int64_t x = 0; x < p; ++x) {
    std::int64_t r = ((x * x % p * x + a * x + b) % p + p) % p;
    n += roots[static_cast<std::size_t>(r)];
  }
  return n;
}

// Oracle: search v with g v + t = v directly, for every (g, t) in
// GL_2(F_l) x F_l^2.
inline gdl::Rational full_model_by_search(std::int64_t ell) {
  std::int64_t fixing = 0, total = 0;
  for (const Mat2& g : gdl::enumerate_gl2(ell))
    for (std::int64_t tx = 0; tx < ell; ++tx)
      for (std::int64_t ty = 0; ty < ell; ++ty) {
        ++total;
        bool found = false;
        for (std::int64_t x = 0; x < ell && !found; ++x)
          for (std::int64_t y = 0; y < ell && !found; ++y)
            found = gdl::add(gdl::apply(g, {x, y}, ell), {tx, ty}, ell) == gdl::Vec2{x, y};
        if (found) ++fixing;
      }
  return gdl::Rational(fixing, total);
}

}  // namespace oracle
