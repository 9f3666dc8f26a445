#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gdl/arith.hpp"
#include "gdl/error.hpp"
#include "gdl/field.hpp"
#include "gdl/polynomial.hpp"

namespace gdl {

/// Affine point or the point at infinity (the group identity).
template <class Elem>
struct CurvePoint {
  bool infinity = true;
  Elem x{};
  Elem y{};

  static CurvePoint at_infinity() { return {}; }
  static CurvePoint affine(Elem x, Elem y) { return {false, std::move(x), std::move(y)}; }

  bool operator==(const CurvePoint& o) const {
    if (infinity || o.infinity) return infinity == o.infinity;
    return x == o.x && y == o.y;
  }
};

/// y^2 = x^3 + a x + b over the field context F. Singular models are
/// rejected at construction.
template <class F>
class WeierstrassCurve {
 public:
  using Elem = typename F::Elem;
  using Point = CurvePoint<Elem>;

  WeierstrassCurve(F field, Elem a, Elem b) : field_(std::move(field)), a_(std::move(a)), b_(std::move(b)) {
    if (field_.is_zero(discriminant())) throw Error(Errc::SingularCurve, "4a^3 + 27b^2 = 0: curve is singular");
  }

  const F& field() const { return field_; }
  const Elem& a() const { return a_; }
  const Elem& b() const { return b_; }

  /// -16 (4a^3 + 27b^2)
  Elem discriminant() const {
    const F& f = field_;
    Elem a3 = f.mul(f.mul(a_, a_), a_);
    Elem inner = f.add(f.mul(f.from_int(4), a3), f.mul(f.from_int(27), f.mul(b_, b_)));
    return f.mul(f.from_int(-16), inner);
  }

  /// x^3 + a x + b
  Elem rhs(const Elem& x) const {
    const F& f = field_;
    return f.add(f.add(f.mul(f.mul(x, x), x), f.mul(a_, x)), b_);
  }

  bool contains(const Point& p) const {
    if (p.infinity) return true;
    return field_.mul(p.y, p.y) == rhs(p.x);
  }

  Point negate(const Point& p) const {
    if (p.infinity) return p;
    return Point::affine(p.x, field_.neg(p.y));
  }

  Point add(const Point& p, const Point& q) const {
    require_on_curve(p);
    require_on_curve(q);
    return add_unchecked(p, q);
  }

  /// Chord-tangent law without membership checks (hot loops on enumerated points).
  Point add_unchecked(const Point& p, const Point& q) const {
    if (p.infinity) return q;
    if (q.infinity) return p;
    const F& f = field_;
    Elem slope;
    if (p.x == q.x) {
      if (f.is_zero(f.add(p.y, q.y))) return Point::at_infinity();
      // doubling: (3x^2 + a) / (2y)
      slope = f.mul(f.add(f.mul(f.from_int(3), f.mul(p.x, p.x)), a_), f.inv(f.mul(f.from_int(2), p.y)));
    } else {
      slope = f.mul(f.sub(q.y, p.y), f.inv(f.sub(q.x, p.x)));
    }
    Elem x3 = f.sub(f.sub(f.mul(slope, slope), p.x), q.x);
    Elem y3 = f.sub(f.mul(slope, f.sub(p.x, x3)), p.y);
    return Point::affine(std::move(x3), std::move(y3));
  }

  /// k * P by double-and-add; negative k uses -P.
  Point scalar_mul(std::int64_t k, const Point& p) const {
    require_on_curve(p);
    return scalar_mul_unchecked(k, p);
  }

  Point scalar_mul_unchecked(std::int64_t k, Point p) const {
    if (k < 0) {
      p = negate(p);
      k = -k;
    }
    Point acc = Point::at_infinity();
    auto e = static_cast<std::uint64_t>(k);
    while (e) {
      if (e & 1U) acc = add_unchecked(acc, p);
      e >>= 1U;
      if (e) p = add_unchecked(p, p);
    }
    return acc;
  }

  std::string str() const { return "y^2 = x^3 + (" + field_.str(a_) + ")x + (" + field_.str(b_) + ")"; }

 private:
  void require_on_curve(const Point& p) const {
    if (!contains(p)) throw Error(Errc::PointNotOnCurve, "point is not on " + str());
  }

  F field_;
  Elem a_;
  Elem b_;
};

using RationalCurve = WeierstrassCurve<RationalField>;
using PrimeCurve = WeierstrassCurve<PrimeField>;
using RationalPoint = RationalCurve::Point;
using PrimePoint = PrimeCurve::Point;

RationalCurve make_rational_curve(const Rational& a, const Rational& b);
PrimeCurve make_prime_curve(std::int64_t a, std::int64_t b, std::int64_t p);

/// Reduction mod p. Throws BadReduction when p divides a denominator or the
/// discriminant of this model (in particular always for p = 2).
PrimeCurve reduce(const RationalCurve& e, std::int64_t p);
bool has_good_reduction(const RationalCurve& e, std::int64_t p);

/// Image of a rational point in E(F_p); a point whose x-denominator is
/// divisible by p reduces to infinity.
PrimePoint reduce_point(const RationalPoint& pt, std::int64_t p);

/// psi_n as a polynomial in x. For even n the true division polynomial is
/// y * factor; for odd n it is factor.
template <class F>
struct DivisionPolynomial {
  int n = 1;
  bool y_factor = false;
  Poly<F> factor;

  /// Polynomial in x whose roots are the x-coordinates of the nonzero
  /// n-torsion: factor for odd n, factor * (x^3 + a x + b) for even n.
  Poly<F> torsion_polynomial(const WeierstrassCurve<F>& e) const;
  /// psi_n^2 rewritten with y^2 = x^3 + a x + b.
  Poly<F> squared_form(const WeierstrassCurve<F>& e) const;
};

template <class F>
DivisionPolynomial<F> division_polynomial(const WeierstrassCurve<F>& e, int n);

/// All points of E(F_p): infinity first, then affine points by (x, y).
std::vector<PrimePoint> enumerate_points(const PrimeCurve& e);
/// |E(F_p)| by quadratic-character counting (no point list).
std::int64_t count_points(const PrimeCurve& e);

struct GroupStructure {
  std::int64_t n1 = 1;  // n1 | n2
  std::int64_t n2 = 1;
  PrimePoint gen_big;    // order n2
  PrimePoint gen_small;  // order n1, infinity when cyclic
  std::int64_t order() const { return n1 * n2; }
};

/// E(F_p) = Z/n1 x Z/n2 with explicit generators, from the enumerated group:
/// generators are added greedily and the relation lattice is put in Smith form.
GroupStructure group_structure(const PrimeCurve& e);

/// Order of P, given a multiple `m` of it (typically |E(F_p)|).
std::int64_t point_order(const PrimeCurve& e, const PrimePoint& p, std::int64_t multiple);

/// Discrete log of `target` to base `base` of order `order` by baby-step
/// giant-step; nullopt if target is not in the cyclic subgroup.
std::optional<std::int64_t> bsgs_log(const PrimeCurve& e, const PrimePoint& base, std::int64_t order,
                                     const PrimePoint& target);

/// (i, j) with P = i * gen_big + j * gen_small, via BSGS per j.
std::optional<std::pair<std::int64_t, std::int64_t>> structure_coordinates(const PrimeCurve& e,
                                                                           const GroupStructure& g,
                                                                           const PrimePoint& p);

/// a_p = p + 1 - |E(F_p)|.
std::int64_t trace_of_frobenius(const RationalCurve& e, std::int64_t p);

/// "a/b;c/d" (denominators optional).
RationalCurve parse_curve(const std::string& text);
/// "x,y" or "inf".
RationalPoint parse_point(const std::string& text);
std::string format_point(const RationalPoint& p);
std::string format_point(const PrimePoint& p);

}  // namespace gdl
