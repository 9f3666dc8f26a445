#include "gdl/backforth.hpp"

#include <algorithm>
#include <stdexcept>

#include "gdl/budget.hpp"
#include "gdl/cm_orbits.hpp"
#include "gdl/finite_group.hpp"

namespace gdl {

namespace {

std::int64_t power(std::int64_t base, int exp) {
  std::int64_t r = 1;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

bool reduced_entries(const Mat2& m, std::int64_t n) {
  for (auto x : m.entries())
    if (x < 0 || x >= n) return false;
  return true;
}

std::string vec_str(Vec2 v) { return "(" + std::to_string(v.x) + "," + std::to_string(v.y) + ")"; }

}  // namespace

std::int64_t TruncatedExtension::modulus() const { return power(ell, level); }

void TruncatedExtension::validate() const {
  const std::int64_t m = modulus();
  if (!reduced_entries(basis, m)) throw std::invalid_argument("basis entries must lie in [0, " + std::to_string(m) + ")");
  if (gcd(basis.det(m), m) != 1)
    throw std::invalid_argument("basis determinant " + std::to_string(basis.det(m)) + " is not a unit mod " +
                                std::to_string(m));
  for (const Vec2& d : division)
    if (d.x < 0 || d.x >= m || d.y < 0 || d.y >= m)
      throw std::invalid_argument("division datum " + vec_str(d) + " is not reduced mod " + std::to_string(m));
}

// ---------------------------------------------------------------------------
// Presets.

BackForthModel BackForthModel::full(std::int64_t ell, int level, int rank) {
  BackForthModel m{AffineGaloisModel::full(ell, level, rank), {}, 0, "full"};
  const std::int64_t n = m.modulus();
  m.basis_change_gens = sl2_generators(n);
  m.basis_change_gens.push_back(Mat2::reduced(-1, 0, 0, 1, n));
  return m;
}

BackForthModel BackForthModel::sl2(std::int64_t ell, int level, int rank) {
  BackForthModel m = full(ell, level, rank);
  m.galois.gamma_gens = sl2_generators(m.modulus());
  m.preset = "sl2";
  return m;
}

BackForthModel BackForthModel::trivial(std::int64_t ell, int level, int rank) {
  BackForthModel m = full(ell, level, rank);
  m.galois = AffineGaloisModel::trivial(ell, level, rank);
  m.preset = "trivial";
  return m;
}

BackForthModel BackForthModel::cm(std::int64_t disc, std::int64_t ell, int level, int rank,
                                  const std::vector<std::pair<std::int64_t, std::int64_t>>& subgroup_gens) {
  QuadOrder o(disc);
  BackForthModel m{AffineGaloisModel::trivial(ell, level, rank), {}, disc, "cm:" + std::to_string(disc)};
  m.galois.translation_gens = full_translation_generators(rank);
  const std::int64_t n = m.modulus();
  if (subgroup_gens.empty()) {
    for (const auto& u : unit_group(o, n).elements) m.galois.gamma_gens.push_back(multiplication_matrix(o, u, n));
  } else {
    std::vector<QuadResidue> gens;
    for (auto [a, b] : subgroup_gens) gens.push_back({a, b});
    unit_subgroup(o, n, gens);  // NotUnits check
    for (const auto& g : gens) m.galois.gamma_gens.push_back(multiplication_matrix(o, g, n));
  }
  for (const auto& u : global_units(o)) m.basis_change_gens.push_back(multiplication_matrix(o, u, n));
  return m;
}

// ---------------------------------------------------------------------------
// Context.

ModelContext::ModelContext(BackForthModel model) : model_(std::move(model)), modulus_(model_.modulus()) {
  validate_model(model_.galois);
  const std::size_t limit = enumeration_budget(100000000);
  auto gamma = gamma_elements(model_.galois, limit);
  gamma_ = std::set<Mat2>(gamma.begin(), gamma.end());
  translations_ = translation_elements(model_.galois, limit);

  const std::int64_t m = modulus_;
  std::vector<Mat2> bgens;
  for (const Mat2& g : model_.basis_change_gens) {
    Mat2 r = Mat2::reduced(g.a, g.b, g.c, g.d, m);
    if (gcd(r.det(m), m) != 1) throw std::invalid_argument("basis change " + to_string(g) + " is not invertible");
    bgens.push_back(r);
  }
  const Mat2 one = Mat2::reduced(1, 0, 0, 1, m);
  basis_changes_ = generate_group(one, bgens, [m](const Mat2& x, const Mat2& y) { return mul(x, y, m); }, limit);
  if (basis_changes_.empty()) throw Error(Errc::ModelTooLarge, "basis change group too large");
  std::stable_partition(basis_changes_.begin(), basis_changes_.end(), [&](const Mat2& x) { return x == one; });

  if (model_.cm_disc != 0) {
    QuadOrder o(model_.cm_disc);
    for (const auto& u : unit_group(o, m).elements) bases_.push_back(multiplication_matrix(o, u, m));
    std::sort(bases_.begin(), bases_.end());
  } else {
    bases_ = enumerate_gl2(m);
  }
}

bool ModelContext::in_translations(const std::vector<Vec2>& t) const {
  return std::binary_search(translations_.begin(), translations_.end(), t);
}

bool ModelContext::admissible(const TruncatedExtension& e) const {
  if (e.ell != model_.ell() || e.level != model_.level() || e.rank() != model_.rank()) return false;
  for (const Vec2& d : e.division)
    if (d.x < 0 || d.x >= modulus_ || d.y < 0 || d.y >= modulus_) return false;
  return std::binary_search(bases_.begin(), bases_.end(), e.basis);
}

// ---------------------------------------------------------------------------
// Matching.

std::vector<MatchState> base_candidates(const TruncatedExtension& v, const TruncatedExtension& w,
                                        const ModelContext& ctx) {
  if (!ctx.admissible(v) || !ctx.admissible(w))
    throw std::invalid_argument("extension data do not fit the model (shape, reduction or basis form)");
  const std::int64_t m = ctx.modulus();
  const Mat2 v_inv = inverse(v.basis, m);
  const auto r = static_cast<std::size_t>(v.rank());
  std::vector<MatchState> out;
  for (const Mat2& h : ctx.basis_changes()) {
    Mat2 g = mul(mul(w.basis, h, m), v_inv, m);
    if (!ctx.in_gamma(g)) continue;
    MatchState s;
    s.step = 0;
    s.h = h;
    s.gamma = g;
    s.translation.assign(r, Vec2{});
    s.matched.assign(r, false);
    s.trace.push_back({0, "base", -1, g, std::vector<Vec2>(r)});
    out.push_back(std::move(s));
  }
  return out;
}

MatchState base_step(const TruncatedExtension& v, const TruncatedExtension& w, const ModelContext& ctx) {
  auto c = base_candidates(v, w, ctx);
  if (c.empty()) {
    const std::int64_t m = ctx.modulus();
    throw MatchFailure(Errc::NoMatch,
                       "no basis change and linear Galois element carry the basis of V (det " +
                           std::to_string(v.basis.det(m)) + ") to that of W (det " + std::to_string(w.basis.det(m)) +
                           ") mod " + std::to_string(m),
                       0);
  }
  return c.front();
}

MatchState inductive_step(const MatchState& state, const TruncatedExtension& v, const TruncatedExtension& w,
                          const ModelContext& ctx, int n) {
  const auto idx = static_cast<std::size_t>(n);
  if (n < 0 || idx >= state.matched.size() || state.matched[idx])
    throw std::invalid_argument("generator " + std::to_string(n) + " is not an unmatched generator");
  const std::int64_t m = ctx.modulus();
  const int step = state.step + 1;
  const bool forth = step % 2 == 1;

  Vec2 target;
  if (forth) {
    // where sigma sends d_V,n versus where it has to go
    target = sub(w.division[idx], add(apply(state.gamma, v.division[idx], m), state.translation[idx], m), m);
  } else {
    // pull d_W,n back through sigma^{-1}; the gap on the V side is pushed forward by g
    Mat2 g_inv = inverse(state.gamma, m);
    Vec2 pulled = apply(g_inv, sub(w.division[idx], state.translation[idx], m), m);
    target = apply(state.gamma, sub(pulled, v.division[idx], m), m);
  }

  for (const auto& tau : ctx.translations()) {
    if (tau[idx] != target) continue;
    bool fixes_matched = true;
    for (std::size_t i = 0; i < tau.size() && fixes_matched; ++i)
      if (state.matched[i] && tau[i] != Vec2{}) fixes_matched = false;
    if (!fixes_matched) continue;
    MatchState next = state;
    next.step = step;
    for (std::size_t i = 0; i < tau.size(); ++i) next.translation[i] = add(next.translation[i], tau[i], m);
    next.matched[idx] = true;
    next.trace.push_back({step, forth ? "forth" : "back", n, Mat2::reduced(1, 0, 0, 1, m), tau});
    return next;
  }
  throw MatchFailure(Errc::KummerDeficient,
                     "step " + std::to_string(step) + ": no translation fixing the matched generators moves d_" +
                         std::to_string(n) + " by " + vec_str(target) + " (coset " + vec_str(target) +
                         " + T_0 is unreachable)",
                     step);
}

MatchState run_match(const TruncatedExtension& v, const TruncatedExtension& w, const ModelContext& ctx) {
  auto candidates = base_candidates(v, w, ctx);
  if (candidates.empty()) base_step(v, w, ctx);  // throws NoMatch with the determinant report
  // The greedy chain from a candidate g succeeds exactly when the forced
  // translation (d_W,i - g d_V,i)_i lies in T: each step leaves the rest of it
  // in T with zeros on the matched generators. So only one chain is run.
  const std::int64_t m = ctx.modulus();
  std::vector<Vec2> forced(v.division.size());
  for (auto& s : candidates) {
    for (std::size_t i = 0; i < forced.size(); ++i)
      forced[i] = sub(w.division[i], apply(s.gamma, v.division[i], m), m);
    if (!ctx.in_translations(forced)) continue;
    for (int n = 0; n < v.rank(); ++n) s = inductive_step(s, v, w, ctx, n);
    return s;
  }
  MatchState s = candidates.front();
  for (int n = 0; n < v.rank(); ++n) s = inductive_step(s, v, w, ctx, n);
  throw std::logic_error("chain succeeded although its forced translation lies outside T");
}

bool diagram_holds(const MatchState& s, const TruncatedExtension& v, const TruncatedExtension& w,
                   const ModelContext& ctx) {
  const std::int64_t m = ctx.modulus();
  if (!ctx.in_gamma(s.gamma) || !ctx.in_translations(s.translation)) return false;
  const auto& b = ctx.basis_changes();
  if (std::find(b.begin(), b.end(), s.h) == b.end()) return false;
  if (mul(s.gamma, v.basis, m) != mul(w.basis, s.h, m)) return false;
  for (std::size_t i = 0; i < s.matched.size(); ++i)
    if (s.matched[i] && add(apply(s.gamma, v.division[i], m), s.translation[i], m) != w.division[i]) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Census.

std::size_t census_index(const ModelContext& ctx, const TruncatedExtension& e) {
  const auto& bases = ctx.bases();
  auto it = std::lower_bound(bases.begin(), bases.end(), e.basis);
  if (it == bases.end() || *it != e.basis) throw std::invalid_argument("basis outside the census universe");
  const auto m = static_cast<std::size_t>(ctx.modulus());
  std::size_t idx = static_cast<std::size_t>(it - bases.begin());
  for (const Vec2& d : e.division) idx = (idx * m + static_cast<std::size_t>(d.x)) * m + static_cast<std::size_t>(d.y);
  return idx;
}

TruncatedExtension census_datum(const ModelContext& ctx, std::size_t index) {
  const auto m = static_cast<std::size_t>(ctx.modulus());
  const auto r = static_cast<std::size_t>(ctx.model().rank());
  TruncatedExtension e{ctx.model().ell(), ctx.model().level(), {}, std::vector<Vec2>(r)};
  for (std::size_t i = r; i-- > 0;) {
    e.division[i].y = static_cast<std::int64_t>(index % m);
    index /= m;
    e.division[i].x = static_cast<std::int64_t>(index % m);
    index /= m;
  }
  e.basis = ctx.bases().at(index);
  return e;
}

CensusResult orbit_census(const ModelContext& ctx) {
  const std::int64_t m = ctx.modulus();
  const auto r = static_cast<std::size_t>(ctx.model().rank());
  std::size_t per_basis = 1;
  for (std::size_t i = 0; i < 2 * r; ++i) per_basis *= static_cast<std::size_t>(m);
  const std::size_t total = ctx.bases().size() * per_basis;
  const std::size_t budget = enumeration_budget(24576);
  if (total > budget)
    throw Error(Errc::EnumerationTooLarge, std::to_string(total) + " extension data exceed the census budget " +
                                               std::to_string(budget));

  std::vector<Mat2> gamma_gens, b_gens;
  for (const Mat2& g : ctx.model().galois.gamma_gens) gamma_gens.push_back(Mat2::reduced(g.a, g.b, g.c, g.d, m));
  for (const Mat2& g : ctx.model().basis_change_gens) b_gens.push_back(Mat2::reduced(g.a, g.b, g.c, g.d, m));
  std::vector<std::vector<Vec2>> t_gens;
  for (const auto& t : ctx.model().galois.translation_gens) {
    std::vector<Vec2> red;
    for (const Vec2& v : t) red.push_back({mod(v.x, m), mod(v.y, m)});
    t_gens.push_back(std::move(red));
  }

  DisjointSet ds(total);
  for (std::size_t i = 0; i < total; ++i) {
    const TruncatedExtension e = census_datum(ctx, i);
    for (const Mat2& g : gamma_gens) {
      TruncatedExtension x = e;
      x.basis = mul(g, e.basis, m);
      for (auto& d : x.division) d = apply(g, d, m);
      ds.unite(i, census_index(ctx, x));
    }
    for (const auto& t : t_gens) {
      TruncatedExtension x = e;
      for (std::size_t k = 0; k < r; ++k) x.division[k] = add(e.division[k], t[k], m);
      ds.unite(i, census_index(ctx, x));
    }
    for (const Mat2& h : b_gens) {
      TruncatedExtension x = e;
      x.basis = mul(e.basis, h, m);
      ds.unite(i, census_index(ctx, x));
    }
  }

  CensusResult out;
  out.data_count = total;
  out.orbits = ds.components();
  out.basis_change_order = ctx.basis_changes().size();
  out.labels.resize(total);
  for (std::size_t i = 0; i < total; ++i) out.labels[i] = static_cast<std::uint32_t>(ds.find(i));
  return out;
}

}  // namespace gdl
