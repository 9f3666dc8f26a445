#pragma once

#include <compare>
#include <cstdint>
#include <vector>

#include "gdl/mat2.hpp"

namespace gdl {

/// Imaginary quadratic order of discriminant D with Z-basis (1, w):
/// w = sqrt(D)/2 when D = 0 mod 4, w = (1 + sqrt(D))/2 when D = 1 mod 4.
class QuadOrder {
 public:
  /// Throws std::invalid_argument unless D < 0 and D = 0, 1 mod 4.
  explicit QuadOrder(std::int64_t disc);

  std::int64_t disc() const { return disc_; }
  /// Index f of this order in the maximal order: D = f^2 D_K.
  std::int64_t conductor() const { return conductor_; }
  /// w^2 = s + t w.
  std::int64_t w2_const() const { return s_; }
  std::int64_t w2_lin() const { return t_; }

  /// Norm of a + b w as an integer.
  std::int64_t norm(std::int64_t a, std::int64_t b) const;

 private:
  std::int64_t disc_;
  std::int64_t conductor_ = 1;
  std::int64_t s_ = 0;
  std::int64_t t_ = 0;
};

/// a + b w in O/NO, coordinates reduced mod N.
struct QuadResidue {
  std::int64_t a = 0;
  std::int64_t b = 0;
  auto operator<=>(const QuadResidue&) const = default;
};

QuadResidue quad_mul(const QuadOrder& o, QuadResidue x, QuadResidue y, std::int64_t n);
bool is_unit(const QuadOrder& o, QuadResidue x, std::int64_t n);

/// Matrix of multiplication by x on the basis (1, w), mod N.
Mat2 multiplication_matrix(const QuadOrder& o, QuadResidue x, std::int64_t n);

/// Global units O^* (norm 1 elements): +-1, or +-1, +-i, or the sixth roots.
std::vector<QuadResidue> global_units(const QuadOrder& o);

struct ResidueRingUnits {
  std::int64_t modulus = 0;
  std::vector<QuadResidue> elements;  // sorted
  std::size_t order() const { return elements.size(); }
};

/// (O/NO)^* by enumerating all N^2 residues. N >= 2; throws NonMaximalOrder
/// when N shares a factor with the conductor.
ResidueRingUnits unit_group(const QuadOrder& o, std::int64_t n);

/// Subgroup of (O/NO)^* generated by `gens` (sorted). Throws NotUnits.
std::vector<QuadResidue> unit_subgroup(const QuadOrder& o, std::int64_t n, const std::vector<QuadResidue>& gens);

struct CmOrbitCount {
  std::int64_t disc = 0;
  std::int64_t modulus = 0;
  std::size_t unit_order = 0;
  std::size_t subgroup_order = 0;
  std::size_t index = 0;   // |(O/NO)^*| / |H|
  std::size_t orbits = 0;  // H-orbits on generators of the free rank-1 module O/NO
};

/// Orbits are counted by union-find over the generators of O/NO (the units),
/// independently of the index.
CmOrbitCount orbit_count_cm(const QuadOrder& o, std::int64_t n, const std::vector<QuadResidue>& gens);

}  // namespace gdl
