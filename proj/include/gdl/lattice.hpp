#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gdl/arith.hpp"
#include "gdl/int_matrix.hpp"
#include "gdl/mat2.hpp"

namespace gdl {

/// Ordered basis (u0, u1) of (Z/N)^2. Construction rejects pairs whose
/// determinant is not a unit.
class GeneratorPair {
 public:
  GeneratorPair(std::int64_t modulus, Vec2 u0, Vec2 u1);
  static GeneratorPair from_matrix(const Mat2& m, std::int64_t modulus);

  std::int64_t modulus() const { return modulus_; }
  const Vec2& u0() const { return u0_; }
  const Vec2& u1() const { return u1_; }
  /// Columns u0, u1.
  Mat2 matrix() const { return Mat2::from_columns(u0_, u1_); }

  auto operator<=>(const GeneratorPair&) const = default;

 private:
  std::int64_t modulus_;
  Vec2 u0_;
  Vec2 u1_;
};

ResidueClass det_pair(const GeneratorPair& p);

/// Is there L in SL_2(Z/M) with L = 1 mod n and L u_i = u'_i. Decided by
/// the criterion det(u0, u1) = det(u'0, u'1) mod M and u_i = u'_i mod n.
/// Throws ModulusMismatch when the moduli differ or n does not divide M.
bool transfer_exists(const GeneratorPair& from, const GeneratorPair& to, std::int64_t n);

/// The unique candidate L = U' U^{-1} when the transfer exists.
std::optional<Mat2> transfer_matrix(const GeneratorPair& from, const GeneratorPair& to, std::int64_t n);

struct SubgroupSpec {
  enum class Kind { FullSL2, CongruenceSL2, ExplicitGenerators };
  Kind kind = Kind::FullSL2;
  std::int64_t level = 1;       // CongruenceSL2: kernel of reduction mod level
  std::vector<Mat2> generators;  // ExplicitGenerators

  static SubgroupSpec full() { return {}; }
  static SubgroupSpec congruence(std::int64_t level) { return {Kind::CongruenceSL2, level, {}}; }
  static SubgroupSpec explicit_generators(std::vector<Mat2> gens) {
    return {Kind::ExplicitGenerators, 1, std::move(gens)};
  }
};

struct OrbitCount {
  std::int64_t modulus = 0;
  std::size_t pairs = 0;  // det-1 generator pairs enumerated
  std::size_t orbits = 0;
  std::vector<GeneratorPair> representatives;  // lexicographically least per orbit, sorted
};

/// |SL_2(Z/N)| = N^3 prod_{p | N} (1 - p^-2).
std::int64_t sl2_order(std::int64_t n);

/// Orbits of G acting by left multiplication on det-1 generator pairs mod N.
/// Throws EnumerationTooLarge when the pair count exceeds the budget
/// (default 2000, i.e. N <= 12; GDL_ENUM_BUDGET overrides).
OrbitCount orbit_count(std::int64_t n, const SubgroupSpec& g);

/// Integer kernel basis (columns) of f, from its Smith form.
IntMatrix integer_kernel(const IntMatrix& f);

/// f with f B = 0, rank n - r and saturation(ker f) = span B, canonicalized
/// by row Hermite form. B must have n rows and saturated, independent
/// columns; a zero matrix counts as the rank-0 sublattice.
IntMatrix complement_morphism(const IntMatrix& b, std::size_t n);

}  // namespace gdl
