#pragma once

#include <compare>
#include <cstdint>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "gdl/curve.hpp"
#include "gdl/mat2.hpp"

namespace gdl {

/// Conjugacy invariants of Frobenius at p acting on E[l]: trace, determinant
/// and the dimension of its fixed space, which is dim E(F_p)[l].
struct FrobeniusSignature {
  std::int64_t p = 0;
  std::int64_t ell = 0;
  std::int64_t trace = 0;  // a_p mod l
  std::int64_t det = 0;    // p mod l
  int fixed_dim = 0;
};

/// (trace, det, fixed_dim) without the prime; what subgroups are tested against.
struct SignatureClass {
  std::int64_t trace = 0;
  std::int64_t det = 0;
  int fixed_dim = 0;
  auto operator<=>(const SignatureClass&) const = default;
};

SignatureClass signature_class(const Mat2& g, std::int64_t ell);

/// Throws BadReduction for bad p and for p = l.
FrobeniusSignature frobenius_signature(const RationalCurve& e, std::int64_t p, std::int64_t ell);

/// Conjugacy types of maximal subgroups of GL_2(F_l) with surjective
/// determinant (the last one only for l >= 5).
enum class SubgroupType { Borel, SplitCartanNormalizer, NonsplitCartanNormalizer, Exceptional };

/// JSON name. For l = 2 the nonsplit Cartan normalizer is all of GL_2(F_2),
/// so the type tested there is the Cartan itself and is named accordingly.
std::string subgroup_type_name(SubgroupType t, std::int64_t ell);

std::vector<SubgroupType> subgroup_types(std::int64_t ell);

/// Elements of the standard representative of the type. For Exceptional this
/// is the union of everything an exceptional subgroup can contain: elements
/// whose image in PGL_2 has order 1, 2, 3, 4 (and 5 when l = +-1 mod 5).
std::vector<Mat2> subgroup_elements(SubgroupType t, std::int64_t ell);

/// Signatures realized by some element of the type (a union over conjugates,
/// since signatures are conjugation invariant).
std::set<SignatureClass> realizable_signatures(SubgroupType t, std::int64_t ell);

/// Types that realize every witnessed signature.
std::vector<SubgroupType> surviving_types(std::int64_t ell, const std::set<SignatureClass>& witnessed);

/// Informational flags: u has tr^2 - 4det a nonzero square and tr != 0; v has
/// tr^2 - 4det a nonsquare; w has tr != 0, tr^2/det outside {0, 1, 2, 4} and
/// tr^2 - 4det != 0.
struct WitnessFlags {
  bool u = false;
  bool v = false;
  bool w = false;
};

WitnessFlags witness_flags(std::int64_t ell, const std::set<SignatureClass>& witnessed);

enum class Verdict { Surjective, Inconclusive };

struct ImageReport {
  std::int64_t ell = 0;
  std::int64_t prime_bound = 0;
  std::vector<FrobeniusSignature> signatures;  // increasing p
  Verdict verdict = Verdict::Inconclusive;
  std::vector<SubgroupType> surviving;
  WitnessFlags witnesses;
  std::string scope = "mod-l only";
};

bool supported_image_ell(std::int64_t ell);

/// Fold of signatures into a verdict; order of the input does not matter.
ImageReport image_from_signatures(std::int64_t ell, std::int64_t prime_bound,
                                  std::vector<FrobeniusSignature> signatures);

/// Scans good primes l < p <= prime_bound. Requires l in {2, 3, 5, 7, 11, 13}
/// and prime_bound >= 100 (std::invalid_argument otherwise).
ImageReport mod_ell_image(const RationalCurve& e, std::int64_t ell, std::int64_t prime_bound);

}  // namespace gdl
