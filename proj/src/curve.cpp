#include "gdl/curve.hpp"

#include <algorithm>
#include <cctype>
#include <unordered_map>

#include "gdl/int_matrix.hpp"

namespace gdl {

namespace {

std::int64_t rational_mod(const Rational& q, std::int64_t p) {
  std::int64_t den = mod(boost::multiprecision::denominator(q), p);
  if (den == 0) throw Error(Errc::BadReduction, "denominator divisible by " + std::to_string(p));
  return mul_mod(mod(boost::multiprecision::numerator(q), p), inv_mod(den, p).value(), p);
}

bool denominator_divisible(const Rational& q, std::int64_t p) {
  return mod(boost::multiprecision::denominator(q), p) == 0;
}

std::int64_t point_key(const PrimePoint& pt, std::int64_t p) { return pt.infinity ? -1 : pt.x * p + pt.y; }

std::string trim(const std::string& s) {
  auto b = std::find_if_not(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); });
  auto e = std::find_if_not(s.rbegin(), s.rend(), [](unsigned char c) { return std::isspace(c); }).base();
  return b < e ? std::string(b, e) : std::string();
}

}  // namespace

RationalCurve make_rational_curve(const Rational& a, const Rational& b) { return {RationalField{}, a, b}; }

PrimeCurve make_prime_curve(std::int64_t a, std::int64_t b, std::int64_t p) {
  PrimeField f{p};
  return {f, f.from_int(a), f.from_int(b)};
}

bool has_good_reduction(const RationalCurve& e, std::int64_t p) {
  if (p < 3 || !is_prime(static_cast<std::uint64_t>(p))) return false;
  if (denominator_divisible(e.a(), p) || denominator_divisible(e.b(), p)) return false;
  return rational_mod(e.discriminant(), p) != 0;
}

PrimeCurve reduce(const RationalCurve& e, std::int64_t p) {
  if (!has_good_reduction(e, p))
    throw Error(Errc::BadReduction, "bad reduction of " + e.str() + " at p = " + std::to_string(p));
  return make_prime_curve(rational_mod(e.a(), p), rational_mod(e.b(), p), p);
}

PrimePoint reduce_point(const RationalPoint& pt, std::int64_t p) {
  if (pt.infinity || denominator_divisible(pt.x, p) || denominator_divisible(pt.y, p)) return PrimePoint::at_infinity();
  return PrimePoint::affine(rational_mod(pt.x, p), rational_mod(pt.y, p));
}

// ---------------------------------------------------------------------------
// Division polynomials. f_n is psi_n for odd n and psi_n / y for even n.

template <class F>
DivisionPolynomial<F> division_polynomial(const WeierstrassCurve<F>& e, int n) {
  if (n < 1) throw std::invalid_argument("division polynomial index must be >= 1");
  const F& fld = e.field();
  using P = Poly<F>;
  const auto& a = e.a();
  const auto& b = e.b();
  auto k = [&](std::int64_t v) { return fld.from_int(v); };
  auto mul3 = [&](const auto& x, const auto& y, const auto& z) { return fld.mul(fld.mul(x, y), z); };

  P cubic(fld, {b, a, fld.zero(), fld.one()});
  P cubic_sq = cubic * cubic;

  std::vector<P> f;
  f.reserve(static_cast<std::size_t>(std::max(n, 4)) + 1);
  f.push_back(P(fld));
  f.push_back(P::constant(fld, fld.one()));
  f.push_back(P::constant(fld, k(2)));
  // 3x^4 + 6ax^2 + 12bx - a^2
  f.push_back(P(fld, {fld.neg(fld.mul(a, a)), fld.mul(k(12), b), fld.mul(k(6), a), fld.zero(), k(3)}));
  // 4(x^6 + 5ax^4 + 20bx^3 - 5a^2x^2 - 4abx - 8b^2 - a^3)
  f.push_back(P(fld, {fld.sub(fld.mul(k(-8), fld.mul(b, b)), mul3(a, a, a)), fld.mul(k(-4), fld.mul(a, b)),
                      fld.mul(k(-5), fld.mul(a, a)), fld.mul(k(20), b), fld.mul(k(5), a), fld.zero(), fld.one()})
                    .scaled(k(4)));

  const auto half = fld.inv(k(2));
  for (int i = 5; i <= n; ++i) {
    auto m = static_cast<std::size_t>(i / 2);
    if (i % 2 == 1) {
      P lhs = f[m + 2] * f[m] * f[m] * f[m];
      P rhs = f[m - 1] * f[m + 1] * f[m + 1] * f[m + 1];
      if (m % 2 == 0)
        lhs = lhs * cubic_sq;
      else
        rhs = rhs * cubic_sq;
      f.push_back(lhs - rhs);
    } else {
      P inner = f[m + 2] * f[m - 1] * f[m - 1] - f[m - 2] * f[m + 1] * f[m + 1];
      f.push_back((f[m] * inner).scaled(half));
    }
  }
  DivisionPolynomial<F> out;
  out.n = n;
  out.y_factor = n % 2 == 0;
  out.factor = f[static_cast<std::size_t>(n)];
  return out;
}

template <class F>
Poly<F> DivisionPolynomial<F>::torsion_polynomial(const WeierstrassCurve<F>& e) const {
  if (!y_factor) return factor;
  const F& fld = e.field();
  return factor * Poly<F>(fld, {e.b(), e.a(), fld.zero(), fld.one()});
}

template <class F>
Poly<F> DivisionPolynomial<F>::squared_form(const WeierstrassCurve<F>& e) const {
  Poly<F> sq = factor * factor;
  if (!y_factor) return sq;
  const F& fld = e.field();
  return sq * Poly<F>(fld, {e.b(), e.a(), fld.zero(), fld.one()});
}

template struct DivisionPolynomial<RationalField>;
template struct DivisionPolynomial<PrimeField>;
template DivisionPolynomial<RationalField> division_polynomial(const RationalCurve&, int);
template DivisionPolynomial<PrimeField> division_polynomial(const PrimeCurve&, int);

// ---------------------------------------------------------------------------
// Points over F_p.

std::vector<PrimePoint> enumerate_points(const PrimeCurve& e) {
  const std::int64_t p = e.field().p;
  std::vector<std::vector<std::int64_t>> roots(static_cast<std::size_t>(p));
  for (std::int64_t y = 0; y < p; ++y) roots[static_cast<std::size_t>(mul_mod(y, y, p))].push_back(y);
  std::vector<PrimePoint> pts{PrimePoint::at_infinity()};
  for (std::int64_t x = 0; x < p; ++x)
    for (std::int64_t y : roots[static_cast<std::size_t>(e.rhs(x))]) pts.push_back(PrimePoint::affine(x, y));
  return pts;
}

std::int64_t count_points(const PrimeCurve& e) {
  const std::int64_t p = e.field().p;
  std::vector<char> square(static_cast<std::size_t>(p), 0);
  for (std::int64_t y = 1; y < p; ++y) square[static_cast<std::size_t>(mul_mod(y, y, p))] = 1;
  std::int64_t count = 1;
  for (std::int64_t x = 0; x < p; ++x) {
    std::int64_t r = e.rhs(x);
    count += r == 0 ? 1 : (square[static_cast<std::size_t>(r)] ? 2 : 0);
  }
  return count;
}

GroupStructure group_structure(const PrimeCurve& e) {
  const std::int64_t p = e.field().p;
  const auto pts = enumerate_points(e);
  const std::size_t total = pts.size();

  // H is the subgroup spanned by the generators chosen so far; every element
  // carries its coordinates with respect to those generators.
  std::unordered_map<std::int64_t, std::size_t> slot;
  std::vector<PrimePoint> members{PrimePoint::at_infinity()};
  std::vector<std::vector<std::int64_t>> coords{{}};
  slot[point_key(members[0], p)] = 0;

  std::vector<PrimePoint> gens;
  std::vector<std::vector<std::int64_t>> relations;
  std::size_t scan = 0;
  while (members.size() < total) {
    while (slot.count(point_key(pts[scan], p))) ++scan;
    const PrimePoint q = pts[scan];
    const std::size_t g = gens.size();

    std::int64_t k = 1;
    PrimePoint r = q;
    while (!slot.count(point_key(r, p))) {
      r = e.add_unchecked(r, q);
      ++k;
    }
    std::vector<std::int64_t> rel = coords[slot[point_key(r, p)]];
    for (auto& c : rel) c = -c;
    rel.push_back(k);
    for (auto& row : relations) row.push_back(0);
    relations.push_back(std::move(rel));
    gens.push_back(q);

    for (auto& c : coords) c.push_back(0);
    const std::size_t base = members.size();
    PrimePoint shift = PrimePoint::at_infinity();
    for (std::int64_t j = 1; j < k; ++j) {
      shift = e.add_unchecked(shift, q);
      for (std::size_t h = 0; h < base; ++h) {
        PrimePoint s = e.add_unchecked(members[h], shift);
        auto c = coords[h];
        c[g] = j;
        slot[point_key(s, p)] = members.size();
        members.push_back(s);
        coords.push_back(std::move(c));
      }
    }
  }

  GroupStructure out;
  out.gen_big = PrimePoint::at_infinity();
  out.gen_small = PrimePoint::at_infinity();
  if (gens.empty()) return out;

  // G = Z^g / rowspan(R). With U R V = D the rows of V^{-1} give a basis
  // adapted to the invariant factors.
  const std::size_t g = gens.size();
  IntMatrix rel(g, g);
  for (std::size_t i = 0; i < g; ++i)
    for (std::size_t j = 0; j < g; ++j) rel(i, j) = relations[i][j];
  SmithForm snf = smith_normal_form(rel);
  IntMatrix vinv = unimodular_inverse(snf.V);
  const auto order = static_cast<std::int64_t>(total);

  std::vector<std::pair<std::int64_t, PrimePoint>> factors;
  for (std::size_t j = 0; j < g; ++j) {
    auto d = static_cast<std::int64_t>(snf.D(j, j));
    if (d == 1) continue;
    PrimePoint gen = PrimePoint::at_infinity();
    for (std::size_t i = 0; i < g; ++i)
      gen = e.add_unchecked(gen, e.scalar_mul_unchecked(mod(vinv(j, i), order), gens[i]));
    factors.emplace_back(d, gen);
  }
  if (factors.size() > 2) throw std::logic_error("elliptic curve group needs more than two generators");
  if (!factors.empty()) {
    out.n2 = factors.back().first;
    out.gen_big = factors.back().second;
  }
  if (factors.size() == 2) {
    out.n1 = factors.front().first;
    out.gen_small = factors.front().second;
  }
  return out;
}

std::int64_t point_order(const PrimeCurve& e, const PrimePoint& pt, std::int64_t multiple) {
  std::int64_t order = multiple;
  for (std::int64_t q : prime_factors(multiple))
    while (order % q == 0 && e.scalar_mul_unchecked(order / q, pt).infinity) order /= q;
  return order;
}

std::optional<std::int64_t> bsgs_log(const PrimeCurve& e, const PrimePoint& base, std::int64_t order,
                                     const PrimePoint& target) {
  const std::int64_t p = e.field().p;
  std::int64_t m = isqrt(order);
  if (m * m < order) ++m;
  std::unordered_map<std::int64_t, std::int64_t> baby;
  PrimePoint acc = PrimePoint::at_infinity();
  for (std::int64_t j = 0; j < m; ++j) {
    baby.emplace(point_key(acc, p), j);
    acc = e.add_unchecked(acc, base);
  }
  const PrimePoint giant = e.negate(acc);  // -m * base
  PrimePoint t = target;
  for (std::int64_t i = 0; i <= m; ++i) {
    auto it = baby.find(point_key(t, p));
    if (it != baby.end()) return mod(i * m + it->second, order);
    t = e.add_unchecked(t, giant);
  }
  return std::nullopt;
}

std::optional<std::pair<std::int64_t, std::int64_t>> structure_coordinates(const PrimeCurve& e,
                                                                           const GroupStructure& g,
                                                                           const PrimePoint& pt) {
  PrimePoint t = pt;
  const PrimePoint step = e.negate(g.gen_small);
  for (std::int64_t j = 0; j < g.n1; ++j) {
    if (auto i = bsgs_log(e, g.gen_big, g.n2, t)) return std::make_pair(*i, j);
    t = e.add_unchecked(t, step);
  }
  return std::nullopt;
}

std::int64_t trace_of_frobenius(const RationalCurve& e, std::int64_t p) {
  return p + 1 - count_points(reduce(e, p));
}

// ---------------------------------------------------------------------------
// Text formats.

RationalCurve parse_curve(const std::string& text) {
  auto semi = text.find(';');
  if (semi == std::string::npos || text.find(';', semi + 1) != std::string::npos)
    throw Error(Errc::ParseError, "curve must look like \"a;b\", got '" + text + "'");
  return make_rational_curve(parse_rational(text.substr(0, semi)), parse_rational(text.substr(semi + 1)));
}

RationalPoint parse_point(const std::string& text) {
  std::string t = trim(text);
  std::string lower = t;
  std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
  if (lower == "inf" || lower == "infinity" || lower == "o") return RationalPoint::at_infinity();
  auto comma = t.find(',');
  if (comma == std::string::npos || t.find(',', comma + 1) != std::string::npos)
    throw Error(Errc::ParseError, "point must look like \"x,y\" or \"inf\", got '" + text + "'");
  return RationalPoint::affine(parse_rational(t.substr(0, comma)), parse_rational(t.substr(comma + 1)));
}

std::string format_point(const RationalPoint& pt) {
  return pt.infinity ? "inf" : to_string(pt.x) + "," + to_string(pt.y);
}

std::string format_point(const PrimePoint& pt) {
  return pt.infinity ? "inf" : std::to_string(pt.x) + "," + std::to_string(pt.y);
}

}  // namespace gdl
