#include "gdl/lattice.hpp"

#include <algorithm>
#include <stdexcept>

#include "gdl/budget.hpp"
#include "gdl/finite_group.hpp"

namespace gdl {

GeneratorPair::GeneratorPair(std::int64_t modulus, Vec2 u0, Vec2 u1)
    : modulus_(modulus), u0_{mod(u0.x, modulus), mod(u0.y, modulus)}, u1_{mod(u1.x, modulus), mod(u1.y, modulus)} {
  if (modulus < 1) throw std::invalid_argument("modulus must be positive");
  if (gcd(matrix().det(modulus_), modulus_) != 1)
    throw Error(Errc::NotInvertible, "determinant of the pair is not a unit mod " + std::to_string(modulus_));
}

GeneratorPair GeneratorPair::from_matrix(const Mat2& m, std::int64_t modulus) {
  return {modulus, m.col0(), m.col1()};
}

ResidueClass det_pair(const GeneratorPair& p) { return {p.matrix().det(p.modulus()), p.modulus()}; }

namespace {

void check_shapes(const GeneratorPair& from, const GeneratorPair& to, std::int64_t n) {
  if (from.modulus() != to.modulus())
    throw Error(Errc::ModulusMismatch, "pairs live mod " + std::to_string(from.modulus()) + " and mod " +
                                           std::to_string(to.modulus()));
  if (n < 1 || from.modulus() % n != 0)
    throw Error(Errc::ModulusMismatch,
                "congruence level " + std::to_string(n) + " does not divide " + std::to_string(from.modulus()));
}

bool congruent(Vec2 u, Vec2 v, std::int64_t n) { return mod(u.x - v.x, n) == 0 && mod(u.y - v.y, n) == 0; }

}  // namespace

bool transfer_exists(const GeneratorPair& from, const GeneratorPair& to, std::int64_t n) {
  check_shapes(from, to, n);
  return det_pair(from) == det_pair(to) && congruent(from.u0(), to.u0(), n) && congruent(from.u1(), to.u1(), n);
}

std::optional<Mat2> transfer_matrix(const GeneratorPair& from, const GeneratorPair& to, std::int64_t n) {
  if (!transfer_exists(from, to, n)) return std::nullopt;
  const std::int64_t m = from.modulus();
  return mul(to.matrix(), inverse(from.matrix(), m), m);
}

std::int64_t sl2_order(std::int64_t n) {
  std::int64_t order = n * n * n;
  for (std::int64_t p : prime_factors(n)) order = order / (p * p) * (p * p - 1);
  return order;
}

OrbitCount orbit_count(std::int64_t n, const SubgroupSpec& g) {
  if (n < 1) throw std::invalid_argument("modulus must be positive");
  const std::size_t budget = enumeration_budget(2000);
  const auto total = static_cast<std::size_t>(sl2_order(n));
  if (total > budget)
    throw Error(Errc::EnumerationTooLarge, std::to_string(total) + " generator pairs mod " + std::to_string(n) +
                                               " exceed the enumeration budget " + std::to_string(budget));

  std::vector<Mat2> gens;
  switch (g.kind) {
    case SubgroupSpec::Kind::FullSL2:
      gens = {Mat2::reduced(0, -1, 1, 0, n), Mat2::reduced(1, 1, 0, 1, n)};
      break;
    case SubgroupSpec::Kind::CongruenceSL2:
      if (g.level < 1 || n % g.level != 0)
        throw Error(Errc::ModulusMismatch,
                    "congruence level " + std::to_string(g.level) + " does not divide " + std::to_string(n));
      for (const Mat2& m : enumerate_sl2(n))
        if (m.a % g.level == 1 % g.level && m.b % g.level == 0 && m.c % g.level == 0 && m.d % g.level == 1 % g.level)
          gens.push_back(m);
      break;
    case SubgroupSpec::Kind::ExplicitGenerators:
      for (const Mat2& m : g.generators) {
        Mat2 r = Mat2::reduced(m.a, m.b, m.c, m.d, n);
        if (r.det(n) != 1 % n)
          throw Error(Errc::NotUnits, "generator " + to_string(r) + " does not have determinant 1 mod " +
                                          std::to_string(n));
        gens.push_back(r);
      }
      break;
  }

  // det-1 pairs are exactly SL_2(Z/N) viewed column-wise; index them densely
  std::vector<Mat2> pairs = enumerate_sl2(n);
  auto key = [n](const Mat2& m) { return static_cast<std::size_t>(((m.a * n + m.b) * n + m.c) * n + m.d); };
  std::vector<std::size_t> index(static_cast<std::size_t>(n * n * n * n), 0);
  for (std::size_t i = 0; i < pairs.size(); ++i) index[key(pairs[i])] = i;

  DisjointSet ds(pairs.size());
  for (std::size_t i = 0; i < pairs.size(); ++i)
    for (const Mat2& h : gens) ds.unite(i, index[key(mul(h, pairs[i], n))]);

  std::vector<std::optional<GeneratorPair>> least(pairs.size());
  for (const Mat2& m : pairs) {
    std::size_t root = ds.find(index[key(m)]);
    GeneratorPair p = GeneratorPair::from_matrix(m, n);
    if (!least[root] || p < *least[root]) least[root] = p;
  }

  OrbitCount out;
  out.modulus = n;
  out.pairs = pairs.size();
  out.orbits = ds.components();
  for (auto& r : least)
    if (r) out.representatives.push_back(*r);
  std::sort(out.representatives.begin(), out.representatives.end());
  return out;
}

IntMatrix integer_kernel(const IntMatrix& f) {
  SmithForm s = smith_normal_form(f);
  IntMatrix out(f.cols(), f.cols() - s.rank);
  for (std::size_t j = s.rank; j < f.cols(); ++j)
    for (std::size_t i = 0; i < f.cols(); ++i) out(i, j - s.rank) = s.V(i, j);
  return out;
}

IntMatrix complement_morphism(const IntMatrix& b, std::size_t n) {
  if (b.rows() != n)
    throw std::invalid_argument("sublattice basis has " + std::to_string(b.rows()) + " rows, ambient rank is " +
                                std::to_string(n));
  if (b.is_zero()) return IntMatrix::identity(n);
  SmithForm s = smith_normal_form(b);
  if (s.rank < b.cols())
    throw Error(Errc::RankDeficientInput, "columns of B are linearly dependent (rank " + std::to_string(s.rank) +
                                              " < " + std::to_string(b.cols()) + ")");
  for (std::size_t i = 0; i < s.rank; ++i)
    if (s.D(i, i) != 1)
      throw Error(Errc::NotSaturated, "span of B has index " + s.D(i, i).str() +
                                          " torsion in Z^n / span(B); saturate first");
  // U B V = D with D = [I_r; 0], so the last n - r rows of U kill B.
  IntMatrix f(n - s.rank, n);
  for (std::size_t i = s.rank; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) f(i - s.rank, j) = s.U(i, j);
  return row_hermite_form(f);
}

}  // namespace gdl
