#include "gdl/cm_orbits.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "gdl/finite_group.hpp"

namespace gdl {

namespace {

bool is_discriminant(std::int64_t d) { return d < 0 && (mod(d, 4) == 0 || mod(d, 4) == 1); }

}  // namespace

QuadOrder::QuadOrder(std::int64_t disc) : disc_(disc) {
  if (!is_discriminant(disc))
    throw std::invalid_argument("discriminant must be negative and 0 or 1 mod 4, got " + std::to_string(disc));
  for (std::int64_t f = 1; f * f <= -disc; ++f)
    if (disc % (f * f) == 0 && is_discriminant(disc / (f * f))) conductor_ = f;
  if (mod(disc, 4) == 0) {
    s_ = disc / 4;
    t_ = 0;
  } else {
    s_ = (disc - 1) / 4;
    t_ = 1;
  }
}

std::int64_t QuadOrder::norm(std::int64_t a, std::int64_t b) const {
  // N(a + b w) = a^2 + t a b - s b^2
  return a * a + t_ * a * b - s_ * b * b;
}

QuadResidue quad_mul(const QuadOrder& o, QuadResidue x, QuadResidue y, std::int64_t n) {
  std::int64_t bd = mul_mod(x.b, y.b, n);
  std::int64_t real = mul_mod(x.a, y.a, n) + mul_mod(bd, mod(o.w2_const(), n), n);
  std::int64_t omega = mul_mod(x.a, y.b, n) + mul_mod(x.b, y.a, n) + mul_mod(bd, mod(o.w2_lin(), n), n);
  return {mod(real, n), mod(omega, n)};
}

bool is_unit(const QuadOrder& o, QuadResidue x, std::int64_t n) {
  return gcd(mod(o.norm(mod(x.a, n), mod(x.b, n)), n), n) == 1;
}

Mat2 multiplication_matrix(const QuadOrder& o, QuadResidue x, std::int64_t n) {
  // x * 1 = a + b w, x * w = b s + (a + b t) w
  return Mat2::reduced(x.a, x.b * o.w2_const(), x.b, x.a + x.b * o.w2_lin(), n);
}

std::vector<QuadResidue> global_units(const QuadOrder& o) {
  std::vector<QuadResidue> out;
  for (std::int64_t a = -2; a <= 2; ++a)
    for (std::int64_t b = -2; b <= 2; ++b)
      if (o.norm(a, b) == 1) out.push_back({a, b});
  return out;
}

ResidueRingUnits unit_group(const QuadOrder& o, std::int64_t n) {
  if (n < 2) throw std::invalid_argument("modulus must be at least 2");
  if (gcd(n, o.conductor()) != 1)
    throw Error(Errc::NonMaximalOrder, "modulus " + std::to_string(n) + " is not coprime to the conductor " +
                                           std::to_string(o.conductor()) + " of the order of discriminant " +
                                           std::to_string(o.disc()));
  ResidueRingUnits out;
  out.modulus = n;
  for (std::int64_t a = 0; a < n; ++a)
    for (std::int64_t b = 0; b < n; ++b)
      if (is_unit(o, {a, b}, n)) out.elements.push_back({a, b});
  return out;
}

std::vector<QuadResidue> unit_subgroup(const QuadOrder& o, std::int64_t n, const std::vector<QuadResidue>& gens) {
  std::vector<QuadResidue> reduced;
  for (const auto& g : gens) {
    QuadResidue r{mod(g.a, n), mod(g.b, n)};
    if (!is_unit(o, r, n))
      throw Error(Errc::NotUnits, std::to_string(g.a) + " + " + std::to_string(g.b) + "w is not a unit mod " +
                                      std::to_string(n));
    reduced.push_back(r);
  }
  return generate_group(QuadResidue{1 % n, 0}, reduced,
                        [&](const QuadResidue& x, const QuadResidue& y) { return quad_mul(o, x, y, n); });
}

CmOrbitCount orbit_count_cm(const QuadOrder& o, std::int64_t n, const std::vector<QuadResidue>& gens) {
  ResidueRingUnits units = unit_group(o, n);
  std::vector<QuadResidue> h = unit_subgroup(o, n, gens);

  std::map<QuadResidue, std::size_t> index;
  for (std::size_t i = 0; i < units.elements.size(); ++i) index[units.elements[i]] = i;
  DisjointSet ds(units.order());
  for (std::size_t i = 0; i < units.elements.size(); ++i)
    for (const auto& g : gens) ds.unite(i, index.at(quad_mul(o, QuadResidue{mod(g.a, n), mod(g.b, n)},
                                                             units.elements[i], n)));

  CmOrbitCount out;
  out.disc = o.disc();
  out.modulus = n;
  out.unit_order = units.order();
  out.subgroup_order = h.size();
  out.index = units.order() / h.size();
  out.orbits = ds.components();
  return out;
}

}  // namespace gdl
