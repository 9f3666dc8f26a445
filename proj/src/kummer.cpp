#include "gdl/kummer.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <set>
#include <stdexcept>

#include "gdl/budget.hpp"
#include "gdl/finite_group.hpp"

namespace gdl {

// ---------------------------------------------------------------------------
// Relations among rational points.

namespace {

// All vectors in [-h, h]^k with max |c_i| = h and first nonzero entry
// positive, in lexicographic order.
void for_each_shell(std::size_t k, std::int64_t h, const std::function<bool(const std::vector<std::int64_t>&)>& f) {
  std::vector<std::int64_t> c(k, -h);
  for (;;) {
    bool on_shell = false, sign_ok = false, seen_nonzero = false;
    for (auto x : c) {
      if (std::abs(x) == h) on_shell = true;
      if (!seen_nonzero && x != 0) {
        seen_nonzero = true;
        sign_ok = x > 0;
      }
    }
    if (on_shell && sign_ok && f(c)) return;
    std::size_t i = k;
    while (i > 0 && c[i - 1] == h) c[--i] = -h;
    if (i == 0) return;
    ++c[i - 1];
  }
}

}  // namespace

RelationResult relation_search(const RationalCurve& e, const std::vector<RationalPoint>& points, std::int64_t bound) {
  if (bound < 1) throw std::invalid_argument("coefficient bound must be at least 1");
  for (const auto& pt : points)
    if (!e.contains(pt)) throw Error(Errc::PointNotOnCurve, format_point(pt) + " is not on " + e.str());

  RelationResult out;
  const std::size_t k = points.size();
  if (k == 0) return out;

  // multiples[q][i][c + bound] = c * P_i mod p_q
  std::vector<PrimeCurve> reductions;
  std::vector<std::vector<std::vector<PrimePoint>>> multiples;
  for (std::int64_t p = 5; out.filter_primes.size() < 3; p += 2) {
    if (!has_good_reduction(e, p)) continue;
    PrimeCurve ep = reduce(e, p);
    std::vector<std::vector<PrimePoint>> table;
    for (const auto& pt : points) {
      PrimePoint base = reduce_point(pt, p);
      std::vector<PrimePoint> row;
      for (std::int64_t c = -bound; c <= bound; ++c) row.push_back(ep.scalar_mul_unchecked(c, base));
      table.push_back(std::move(row));
    }
    out.filter_primes.push_back(p);
    reductions.push_back(std::move(ep));
    multiples.push_back(std::move(table));
  }

  for (std::int64_t h = 1; h <= bound && !out.relation; ++h) {
    for_each_shell(k, h, [&](const std::vector<std::int64_t>& c) {
      ++out.candidates;
      for (std::size_t q = 0; q < reductions.size(); ++q) {
        PrimePoint s = PrimePoint::at_infinity();
        for (std::size_t i = 0; i < k; ++i)
          s = reductions[q].add_unchecked(s, multiples[q][i][static_cast<std::size_t>(c[i] + bound)]);
        if (!s.infinity) return false;
      }
      RationalPoint s = RationalPoint::at_infinity();
      for (std::size_t i = 0; i < k; ++i) s = e.add(s, e.scalar_mul(c[i], points[i]));
      if (!s.infinity) return false;
      out.relation = c;
      return true;
    });
  }
  return out;
}

// ---------------------------------------------------------------------------
// Divisibility in E(F_p).

bool divisible_by_scan(const PrimeCurve& e, const PrimePoint& pt, std::int64_t ell) {
  for (const auto& q : enumerate_points(e))
    if (e.scalar_mul_unchecked(ell, q) == pt) return true;
  return false;
}

bool divisible_by_coordinates(const PrimeCurve& e, const GroupStructure& g, const PrimePoint& pt, std::int64_t ell) {
  auto c = structure_coordinates(e, g, pt);
  if (!c) throw std::logic_error("point outside the group spanned by its generators");
  return c->first % gcd(ell, g.n2) == 0 && c->second % gcd(ell, g.n1) == 0;
}

DivisibilitySample is_divisible_mod_p(const RationalCurve& e, const RationalPoint& pt, std::int64_t ell,
                                      std::int64_t p) {
  if (!e.contains(pt)) throw Error(Errc::PointNotOnCurve, format_point(pt) + " is not on " + e.str());
  PrimeCurve ep = reduce(e, p);
  PrimePoint pp = reduce_point(pt, p);
  GroupStructure g = group_structure(ep);
  DivisibilitySample s{p, ell, false, g.n1, g.n2};
  if (pp.infinity)
    s.divisible = true;
  else if (g.order() <= 10000)
    s.divisible = divisible_by_scan(ep, pp, ell);
  else
    s.divisible = divisible_by_coordinates(ep, g, pp, ell);
  return s;
}

bool density_prime(const RationalCurve& e, std::int64_t ell, std::int64_t p) {
  return p >= 5 && p != ell && has_good_reduction(e, p);
}

EmpiricalDensity empirical_density(const RationalCurve& e, const RationalPoint& pt, std::int64_t ell,
                                   std::int64_t prime_bound) {
  if (!is_prime(static_cast<std::uint64_t>(ell))) throw std::invalid_argument("l must be prime");
  auto torsion = relation_search(e, {pt}, 12);
  if (torsion.relation)
    throw Error(Errc::TorsionPoint, format_point(pt) + " is torsion: " + std::to_string(torsion.relation->front()) +
                                        " * P = O");
  EmpiricalDensity d;
  for (std::int64_t p : primes_up_to(prime_bound)) {
    if (!density_prime(e, ell, p)) continue;
    ++d.total;
    if (is_divisible_mod_p(e, pt, ell, p).divisible) ++d.divisible;
  }
  return d;
}

// ---------------------------------------------------------------------------
// Affine Galois models.

std::int64_t AffineGaloisModel::modulus() const {
  std::int64_t m = 1;
  for (int i = 0; i < level; ++i) m *= ell;
  return m;
}

std::vector<Mat2> sl2_generators(std::int64_t m) {
  return {Mat2::reduced(0, -1, 1, 0, m), Mat2::reduced(1, 1, 0, 1, m)};
}

std::vector<Mat2> gl2_generators(std::int64_t m) {
  auto out = sl2_generators(m);
  for (std::int64_t u = 2; u < m; ++u)
    if (gcd(u, m) == 1) out.push_back({u, 0, 0, 1});
  return out;
}

std::vector<std::vector<Vec2>> full_translation_generators(int rank) {
  std::vector<std::vector<Vec2>> out;
  for (int i = 0; i < rank; ++i)
    for (Vec2 e : {Vec2{1, 0}, Vec2{0, 1}}) {
      std::vector<Vec2> t(static_cast<std::size_t>(rank));
      t[static_cast<std::size_t>(i)] = e;
      out.push_back(t);
    }
  return out;
}

AffineGaloisModel AffineGaloisModel::full(std::int64_t ell, int level, int rank) {
  AffineGaloisModel m{ell, level, rank, {}, full_translation_generators(rank)};
  m.gamma_gens = gl2_generators(m.modulus());
  return m;
}

AffineGaloisModel AffineGaloisModel::sl2(std::int64_t ell, int level, int rank) {
  AffineGaloisModel m{ell, level, rank, {}, full_translation_generators(rank)};
  m.gamma_gens = sl2_generators(m.modulus());
  return m;
}

AffineGaloisModel AffineGaloisModel::trivial(std::int64_t ell, int level, int rank) {
  return {ell, level, rank, {}, {}};
}

std::vector<Mat2> gamma_elements(const AffineGaloisModel& model, std::size_t limit) {
  const std::int64_t m = model.modulus();
  std::vector<Mat2> gens;
  for (const Mat2& g : model.gamma_gens) gens.push_back(Mat2::reduced(g.a, g.b, g.c, g.d, m));
  auto out = generate_group(Mat2::reduced(1, 0, 0, 1, m), gens,
                            [m](const Mat2& x, const Mat2& y) { return mul(x, y, m); }, limit);
  if (out.empty()) throw Error(Errc::ModelTooLarge, "linear part exceeds " + std::to_string(limit) + " elements");
  return out;
}

std::vector<std::vector<Vec2>> translation_elements(const AffineGaloisModel& model, std::size_t limit) {
  const std::int64_t m = model.modulus();
  const auto r = static_cast<std::size_t>(model.rank);
  std::vector<std::vector<Vec2>> gens;
  for (const auto& t : model.translation_gens) {
    std::vector<Vec2> red;
    for (const Vec2& v : t) red.push_back({mod(v.x, m), mod(v.y, m)});
    gens.push_back(std::move(red));
  }
  auto plus = [m, r](const std::vector<Vec2>& x, const std::vector<Vec2>& y) {
    std::vector<Vec2> z(r);
    for (std::size_t i = 0; i < r; ++i) z[i] = add(x[i], y[i], m);
    return z;
  };
  auto out = generate_group(std::vector<Vec2>(r), gens, plus, limit);
  if (out.empty()) throw Error(Errc::ModelTooLarge, "translation part exceeds " + std::to_string(limit) + " elements");
  return out;
}

void validate_model(const AffineGaloisModel& model) {
  if (model.ell < 2 || !is_prime(static_cast<std::uint64_t>(model.ell)))
    throw std::invalid_argument("l must be prime");
  if (model.level < 1 || model.rank < 0) throw std::invalid_argument("level must be >= 1 and rank >= 0");
  const std::int64_t m = model.modulus();
  for (const Mat2& g : model.gamma_gens)
    if (gcd(Mat2::reduced(g.a, g.b, g.c, g.d, m).det(m), m) != 1)
      throw std::invalid_argument("linear generator " + to_string(g) + " is not invertible mod " + std::to_string(m));
  for (const auto& t : model.translation_gens)
    if (t.size() != static_cast<std::size_t>(model.rank))
      throw std::invalid_argument("translation generator has " + std::to_string(t.size()) + " components, rank is " +
                                  std::to_string(model.rank));
  auto elems = translation_elements(model, enumeration_budget(100000000));
  std::set<std::vector<Vec2>> tset(elems.begin(), elems.end());
  for (const Mat2& g : model.gamma_gens)
    for (const auto& t : model.translation_gens) {
      std::vector<Vec2> moved;
      for (const Vec2& v : t) moved.push_back(apply(g, {mod(v.x, m), mod(v.y, m)}, m));
      if (!tset.count(moved)) throw std::invalid_argument("translation part is not stable under " + to_string(g));
    }
}

Rational model_density(const AffineGaloisModel& model) {
  validate_model(model);
  const std::size_t budget = enumeration_budget(100000000);
  auto gamma = gamma_elements(model, budget);
  auto trans = translation_elements(model, budget);
  if (static_cast<double>(gamma.size()) * static_cast<double>(trans.size()) > static_cast<double>(budget))
    throw Error(Errc::ModelTooLarge, "|Gamma x T| = " + std::to_string(gamma.size()) + " * " +
                                         std::to_string(trans.size()) + " exceeds the budget " +
                                         std::to_string(budget));
  const std::int64_t m = model.modulus();
  std::vector<char> image(static_cast<std::size_t>(m * m));
  std::int64_t fixing = 0;
  for (const Mat2& g : gamma) {
    std::fill(image.begin(), image.end(), 0);
    Mat2 shifted = Mat2::reduced(g.a - 1, g.b, g.c, g.d - 1, m);
    for (std::int64_t x = 0; x < m; ++x)
      for (std::int64_t y = 0; y < m; ++y) {
        Vec2 w = apply(shifted, {x, y}, m);
        image[static_cast<std::size_t>(w.x * m + w.y)] = 1;
      }
    for (const auto& t : trans) {
      bool all = true;
      for (const Vec2& v : t) all = all && image[static_cast<std::size_t>(v.x * m + v.y)];
      if (all) ++fixing;
    }
  }
  return Rational(fixing, static_cast<std::int64_t>(gamma.size() * trans.size()));
}

KummerReport kummer_report(const RationalCurve& e, const RationalPoint& pt, std::int64_t ell,
                           std::int64_t prime_bound) {
  KummerReport r;
  r.ell = ell;
  r.prime_bound = prime_bound;
  r.model = model_density(AffineGaloisModel::full(ell, 1, 1));
  EmpiricalDensity d = empirical_density(e, pt, ell, prime_bound);
  r.primes = d.total;
  r.divisible_count = d.divisible;
  r.empirical = d.fraction();
  const double q = static_cast<double>(r.model);
  const double n = static_cast<double>(d.total);
  const double sigma = std::sqrt(n * q * (1 - q));
  const double gap = std::abs(static_cast<double>(d.divisible) - n * q);
  r.sigma_distance = sigma > 0 ? gap / sigma : (gap == 0 ? 0.0 : std::numeric_limits<double>::infinity());
  r.verdict = r.sigma_distance <= 3.0 ? "full" : "deficient";
  return r;
}

}  // namespace gdl
