#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "gdl/kummer.hpp"
#include "gdl/mat2.hpp"

namespace gdl {

// Finite model of the back-and-forth construction at level M = l^m.
//
//   extension data      (U, d_1..d_r): U a basis pair of (Z/M)^2 (columns),
//                       d_i in (Z/M)^2 the division datum of generator i
//   Galois element      sigma = (g, t) in Gamma x T:  U -> g U,  d_i -> g d_i + t_i
//   basis change        h in B acting on the right of U and leaving d fixed
//                       (non-CM: det +-1, the image of GL_2(Z); CM: the global units)
//
// V and W are equivalent when g U_V = U_W h and g d_V,i + t_i = d_W,i for all i.

struct TruncatedExtension {
  std::int64_t ell = 2;
  int level = 1;
  Mat2 basis;                 // columns u0, u1; det a unit mod M
  std::vector<Vec2> division;  // one per generator

  std::int64_t modulus() const;
  int rank() const { return static_cast<int>(division.size()); }
  /// Throws std::invalid_argument on a non-unit determinant or unreduced entries.
  void validate() const;
  auto operator<=>(const TruncatedExtension&) const = default;
};

struct BackForthModel {
  AffineGaloisModel galois;
  std::vector<Mat2> basis_change_gens;
  std::int64_t cm_disc = 0;  // nonzero: bases are restricted to (u, w u), u a unit of O/MO
  std::string preset = "custom";

  std::int64_t ell() const { return galois.ell; }
  int level() const { return galois.level; }
  int rank() const { return galois.rank; }
  std::int64_t modulus() const { return galois.modulus(); }

  /// Gamma = GL_2(Z/M), T full.
  static BackForthModel full(std::int64_t ell, int level, int rank);
  /// Gamma = SL_2(Z/M), T full.
  static BackForthModel sl2(std::int64_t ell, int level, int rank);
  /// Gamma and T trivial.
  static BackForthModel trivial(std::int64_t ell, int level, int rank);
  /// CM by the order of discriminant D: Gamma = multiplication by the units
  /// of O/MO (or by `subgroup_gens` in the basis (1, w) when given), T full.
  static BackForthModel cm(std::int64_t disc, std::int64_t ell, int level, int rank,
                           const std::vector<std::pair<std::int64_t, std::int64_t>>& subgroup_gens = {});
};

/// Enumerated groups of a model, computed once.
class ModelContext {
 public:
  explicit ModelContext(BackForthModel model);

  const BackForthModel& model() const { return model_; }
  std::int64_t modulus() const { return modulus_; }
  bool in_gamma(const Mat2& g) const { return gamma_.count(g) > 0; }
  bool in_translations(const std::vector<Vec2>& t) const;
  /// Sorted, so the first hit of a scan is the lexicographically least.
  const std::vector<std::vector<Vec2>>& translations() const { return translations_; }
  /// Identity first, then lexicographic.
  const std::vector<Mat2>& basis_changes() const { return basis_changes_; }
  const std::set<Mat2>& gamma() const { return gamma_; }
  /// Bases allowed as extension data.
  const std::vector<Mat2>& bases() const { return bases_; }
  bool admissible(const TruncatedExtension& e) const;

 private:
  BackForthModel model_;
  std::int64_t modulus_;
  std::set<Mat2> gamma_;
  std::vector<std::vector<Vec2>> translations_;
  std::vector<Mat2> basis_changes_;
  std::vector<Mat2> bases_;
};

struct MatchStep {
  int step = 0;
  std::string direction;  // "base", "forth", "back"
  int generator = -1;     // -1 for the base step
  Mat2 gamma;
  std::vector<Vec2> translation;  // sigma' (zero at the base step)
};

struct MatchState {
  int step = 0;
  Mat2 h;                         // basis change on the lattice part
  Mat2 gamma;                     // linear part of sigma_n
  std::vector<Vec2> translation;  // translation part of sigma_n
  std::vector<bool> matched;
  std::vector<MatchStep> trace;
};

/// NoMatch / KummerDeficient carrying the failing step.
class MatchFailure : public Error {
 public:
  MatchFailure(Errc code, const std::string& what, int step) : Error(code, what), step_(step) {}
  int step() const { return step_; }

 private:
  int step_;
};

/// Base candidates h in B (identity first, then lexicographic) for which
/// g = U_W h U_V^{-1} lies in Gamma.
std::vector<MatchState> base_candidates(const TruncatedExtension& v, const TruncatedExtension& w,
                                        const ModelContext& ctx);

/// First base candidate; throws MatchFailure(NoMatch) naming both
/// determinant classes when there is none.
MatchState base_step(const TruncatedExtension& v, const TruncatedExtension& w, const ModelContext& ctx);

/// Matches generator n with sigma' = (1, tau), tau the least element of T
/// vanishing on matched generators that moves d_n into place. Forth steps
/// work from V, back steps from W through sigma^{-1}; both land on the same
/// tau. Throws MatchFailure(KummerDeficient) naming the unreachable value.
MatchState inductive_step(const MatchState& state, const TruncatedExtension& v, const TruncatedExtension& w,
                          const ModelContext& ctx, int n);

/// Base step then generators 0..r-1 alternating forth and back, retrying
/// base candidates in order until the whole chain succeeds. Throws
/// MatchFailure (NoMatch at step 0, otherwise KummerDeficient at the step
/// reached by the first candidate).
MatchState run_match(const TruncatedExtension& v, const TruncatedExtension& w, const ModelContext& ctx);

/// g U_V = U_W h and g d_V,i + t_i = d_W,i on matched generators, with g in
/// Gamma, t in T and h in B.
bool diagram_holds(const MatchState& s, const TruncatedExtension& v, const TruncatedExtension& w,
                   const ModelContext& ctx);

struct CensusResult {
  std::size_t data_count = 0;
  std::size_t orbits = 0;
  std::size_t basis_change_order = 0;
  std::vector<std::uint32_t> labels;  // orbit root per datum index
};

/// Dense index of an admissible datum within the census universe.
std::size_t census_index(const ModelContext& ctx, const TruncatedExtension& e);
TruncatedExtension census_datum(const ModelContext& ctx, std::size_t index);

/// Orbits of (Galois x basis change) on all admissible data, by union-find
/// over generators. Throws EnumerationTooLarge above the budget (default 24576).
CensusResult orbit_census(const ModelContext& ctx);

}  // namespace gdl
