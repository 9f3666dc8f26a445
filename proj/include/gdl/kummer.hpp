#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gdl/arith.hpp"
#include "gdl/curve.hpp"
#include "gdl/mat2.hpp"

namespace gdl {

struct RelationResult {
  std::optional<std::vector<std::int64_t>> relation;  // sum c_i P_i = O, verified over Q
  std::vector<std::int64_t> filter_primes;             // good primes used to reject candidates
  std::size_t candidates = 0;                          // coefficient vectors examined
};

/// Smallest nonzero c (by max |c_i|, then lexicographically, first nonzero
/// entry positive) with |c_i| <= bound and sum c_i P_i = O. Candidates are
/// first tested mod three good primes; survivors are checked exactly over Q.
/// Since reduction at a good prime is a homomorphism, a candidate that fails
/// mod some good prime cannot be a relation over Q.
RelationResult relation_search(const RationalCurve& e, const std::vector<RationalPoint>& points, std::int64_t bound);

struct DivisibilitySample {
  std::int64_t p = 0;
  std::int64_t ell = 0;
  bool divisible = false;
  std::int64_t n1 = 1;
  std::int64_t n2 = 1;
};

/// Is P in l E(F_p), by trying every Q in E(F_p).
bool divisible_by_scan(const PrimeCurve& e, const PrimePoint& pt, std::int64_t ell);
/// Same question through P = i G + j H in Z/n2 x Z/n1: solvable iff
/// gcd(l, n2) | i and gcd(l, n1) | j.
bool divisible_by_coordinates(const PrimeCurve& e, const GroupStructure& g, const PrimePoint& pt, std::int64_t ell);

/// Scan for |E(F_p)| <= 10^4, coordinates above. Throws BadReduction.
DivisibilitySample is_divisible_mod_p(const RationalCurve& e, const RationalPoint& pt, std::int64_t ell,
                                      std::int64_t p);

/// Primes used for density sampling: 5 <= p <= bound with good reduction and p != l.
bool density_prime(const RationalCurve& e, std::int64_t ell, std::int64_t p);

struct EmpiricalDensity {
  std::int64_t divisible = 0;
  std::int64_t total = 0;
  double fraction() const { return total ? static_cast<double>(divisible) / static_cast<double>(total) : 0.0; }
};

/// Throws TorsionPoint when relation_search({P}, 12) finds a relation.
EmpiricalDensity empirical_density(const RationalCurve& e, const RationalPoint& pt, std::int64_t ell,
                                   std::int64_t prime_bound);

/// Finite stand-in for Gal(Q(E[M], M^-1 P_1, ..., M^-1 P_r)/Q), M = l^m: the
/// group Gamma x T with Gamma <= GL_2(Z/M) acting on T <= ((Z/M)^2)^r, an
/// element (g, t) acting by v -> g v + t_i on the i-th division coset.
struct AffineGaloisModel {
  std::int64_t ell = 2;
  int level = 1;  // m
  int rank = 1;   // r
  std::vector<Mat2> gamma_gens;
  std::vector<std::vector<Vec2>> translation_gens;  // each of length r

  std::int64_t modulus() const;

  static AffineGaloisModel full(std::int64_t ell, int level, int rank);
  static AffineGaloisModel sl2(std::int64_t ell, int level, int rank);
  static AffineGaloisModel trivial(std::int64_t ell, int level, int rank);
};

/// Generators of GL_2(Z/M): S, T and diag(u, 1) for every unit u.
std::vector<Mat2> gl2_generators(std::int64_t m);
/// S = [[0, -1], [1, 0]], T = [[1, 1], [0, 1]].
std::vector<Mat2> sl2_generators(std::int64_t m);
/// Unit vectors of ((Z/M)^2)^r.
std::vector<std::vector<Vec2>> full_translation_generators(int rank);

/// Closures of the generator lists. Throws ModelTooLarge past `limit`.
std::vector<Mat2> gamma_elements(const AffineGaloisModel& model, std::size_t limit);
std::vector<std::vector<Vec2>> translation_elements(const AffineGaloisModel& model, std::size_t limit);

/// Throws std::invalid_argument when T is not Gamma-stable or shapes disagree.
void validate_model(const AffineGaloisModel& model);

/// Exact fraction of (g, t) in Gamma x T such that every t_i lies in the image
/// of g - 1, i.e. every affine map v -> g v + t_i has a fixed point. Throws
/// ModelTooLarge when |Gamma| |T| exceeds the budget (default 10^8).
Rational model_density(const AffineGaloisModel& model);

struct KummerReport {
  std::int64_t ell = 0;
  std::int64_t prime_bound = 0;
  std::int64_t primes = 0;
  std::int64_t divisible_count = 0;
  double empirical = 0;
  Rational model;
  double sigma_distance = 0;  // |k - n q| / sqrt(n q (1 - q))
  std::string verdict;        // "full" or "deficient"
};

/// Empirical density of P against the full affine model at level l, r = 1,
/// with a 3 sigma verdict.
KummerReport kummer_report(const RationalCurve& e, const RationalPoint& pt, std::int64_t ell,
                           std::int64_t prime_bound);

}  // namespace gdl
