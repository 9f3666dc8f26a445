#include "gdl/galois_image.hpp"

#include <algorithm>
#include <stdexcept>

namespace gdl {

namespace {

std::int64_t first_nonsquare(std::int64_t ell) {
  for (std::int64_t e = 2; e < ell; ++e)
    if (!is_nonzero_square(e, ell)) return e;
  throw std::logic_error("no nonsquare mod " + std::to_string(ell));
}

int projective_order(const Mat2& g, std::int64_t ell) {
  Mat2 x = g;
  for (int k = 1;; ++k) {
    if (x.is_scalar()) return k;
    x = mul(x, g, ell);
  }
}

}  // namespace

SignatureClass signature_class(const Mat2& g, std::int64_t ell) {
  return {g.trace(ell), g.det(ell), fixed_space_dim(g, ell)};
}

FrobeniusSignature frobenius_signature(const RationalCurve& e, std::int64_t p, std::int64_t ell) {
  if (p == ell) throw Error(Errc::BadReduction, "p must differ from l");
  PrimeCurve ep = reduce(e, p);
  GroupStructure g = group_structure(ep);
  std::int64_t ap = p + 1 - g.order();
  int fixed = (g.n1 % ell == 0 ? 1 : 0) + (g.n2 % ell == 0 ? 1 : 0);
  return {p, ell, mod(ap, ell), mod(p, ell), fixed};
}

std::string subgroup_type_name(SubgroupType t, std::int64_t ell) {
  switch (t) {
    case SubgroupType::Borel:
      return "borel";
    case SubgroupType::SplitCartanNormalizer:
      return "split_cartan_normalizer";
    case SubgroupType::NonsplitCartanNormalizer:
      return ell == 2 ? "nonsplit_cartan" : "nonsplit_cartan_normalizer";
    case SubgroupType::Exceptional:
      return "exceptional";
  }
  return "?";
}

std::vector<SubgroupType> subgroup_types(std::int64_t ell) {
  std::vector<SubgroupType> out{SubgroupType::Borel, SubgroupType::SplitCartanNormalizer,
                                SubgroupType::NonsplitCartanNormalizer};
  if (ell >= 5) out.push_back(SubgroupType::Exceptional);
  return out;
}

std::vector<Mat2> subgroup_elements(SubgroupType t, std::int64_t ell) {
  std::vector<Mat2> out;
  switch (t) {
    case SubgroupType::Borel:
      for (std::int64_t a = 1; a < ell; ++a)
        for (std::int64_t b = 0; b < ell; ++b)
          for (std::int64_t d = 1; d < ell; ++d) out.push_back({a, b, 0, d});
      break;
    case SubgroupType::SplitCartanNormalizer:
      for (std::int64_t a = 1; a < ell; ++a)
        for (std::int64_t d = 1; d < ell; ++d) {
          out.push_back({a, 0, 0, d});
          out.push_back({0, a, d, 0});
        }
      break;
    case SubgroupType::NonsplitCartanNormalizer:
      if (ell == 2) {
        // F_4^* inside GL_2(F_2); its normalizer would be everything
        out = {{1, 0, 0, 1}, {0, 1, 1, 1}, {1, 1, 1, 0}};
        break;
      } else {
        // F_{l^2}^* as a + b sqrt(eps) in the basis (1, sqrt(eps)), plus the
        // Frobenius conjugation diag(1, -1)
        const std::int64_t eps = first_nonsquare(ell);
        for (std::int64_t a = 0; a < ell; ++a)
          for (std::int64_t b = 0; b < ell; ++b) {
            if (a == 0 && b == 0) continue;
            Mat2 c = Mat2::reduced(a, b * eps, b, a, ell);
            out.push_back(c);
            out.push_back(mul(Mat2::reduced(1, 0, 0, -1, ell), c, ell));
          }
      }
      break;
    case SubgroupType::Exceptional: {
      const bool five = ell % 5 == 1 || ell % 5 == 4;
      for (const Mat2& g : enumerate_gl2(ell)) {
        int k = projective_order(g, ell);
        if (k <= 4 || (five && k == 5)) out.push_back(g);
      }
      break;
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::set<SignatureClass> realizable_signatures(SubgroupType t, std::int64_t ell) {
  std::set<SignatureClass> out;
  for (const Mat2& g : subgroup_elements(t, ell)) out.insert(signature_class(g, ell));
  return out;
}

std::vector<SubgroupType> surviving_types(std::int64_t ell, const std::set<SignatureClass>& witnessed) {
  std::vector<SubgroupType> out;
  for (SubgroupType t : subgroup_types(ell)) {
    auto realizable = realizable_signatures(t, ell);
    if (std::includes(realizable.begin(), realizable.end(), witnessed.begin(), witnessed.end())) out.push_back(t);
  }
  return out;
}

WitnessFlags witness_flags(std::int64_t ell, const std::set<SignatureClass>& witnessed) {
  WitnessFlags f;
  for (const auto& s : witnessed) {
    std::int64_t tr2 = mul_mod(s.trace, s.trace, ell);
    std::int64_t disc = mod(tr2 - 4 * s.det, ell);
    if (s.trace != 0 && is_nonzero_square(disc, ell)) f.u = true;
    if (disc != 0 && !is_nonzero_square(disc, ell)) f.v = true;
    if (s.trace != 0 && disc != 0 && s.det != 0) {
      std::int64_t ratio = mul_mod(tr2, inv_mod(s.det, ell).value(), ell);
      if (ratio != 0 && ratio != 1 % ell && ratio != 2 % ell && ratio != 4 % ell) f.w = true;
    }
  }
  return f;
}

bool supported_image_ell(std::int64_t ell) {
  return ell == 2 || ell == 3 || ell == 5 || ell == 7 || ell == 11 || ell == 13;
}

ImageReport image_from_signatures(std::int64_t ell, std::int64_t prime_bound,
                                  std::vector<FrobeniusSignature> signatures) {
  std::sort(signatures.begin(), signatures.end(),
            [](const FrobeniusSignature& x, const FrobeniusSignature& y) { return x.p < y.p; });
  std::set<SignatureClass> witnessed;
  for (const auto& s : signatures) witnessed.insert({s.trace, s.det, s.fixed_dim});
  ImageReport r;
  r.ell = ell;
  r.prime_bound = prime_bound;
  r.signatures = std::move(signatures);
  r.surviving = surviving_types(ell, witnessed);
  r.witnesses = witness_flags(ell, witnessed);
  r.verdict = r.surviving.empty() ? Verdict::Surjective : Verdict::Inconclusive;
  return r;
}

ImageReport mod_ell_image(const RationalCurve& e, std::int64_t ell, std::int64_t prime_bound) {
  if (!supported_image_ell(ell)) throw std::invalid_argument("l must be one of 2, 3, 5, 7, 11, 13");
  if (prime_bound < 100) throw std::invalid_argument("prime bound must be at least 100");
  std::vector<FrobeniusSignature> sigs;
  for (std::int64_t p : primes_up_to(prime_bound)) {
    if (p <= ell || !has_good_reduction(e, p)) continue;
    sigs.push_back(frobenius_signature(e, p, ell));
  }
  return image_from_signatures(ell, prime_bound, std::move(sigs));
}

}  // namespace gdl
