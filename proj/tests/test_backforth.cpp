#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <map>
#include <random>

#include "gdl/backforth.hpp"

using namespace gdl;

namespace {

// Oracle: an equivalence (g, t, h) by direct search over Gamma x B, the
// translation then being forced.
bool equivalent_by_search(const TruncatedExtension& v, const TruncatedExtension& w, const ModelContext& ctx) {
  const std::int64_t m = ctx.modulus();
  for (const Mat2& g : ctx.gamma())
    for (const Mat2& h : ctx.basis_changes()) {
      if (mul(g, v.basis, m) != mul(w.basis, h, m)) continue;
      std::vector<Vec2> t;
      for (std::size_t i = 0; i < v.division.size(); ++i) t.push_back(sub(w.division[i], apply(g, v.division[i], m), m));
      if (ctx.in_translations(t)) return true;
    }
  return false;
}

template <class T>
const T& pick(const std::vector<T>& xs, std::mt19937_64& rng) {
  return xs[rng() % xs.size()];
}

TruncatedExtension random_datum(const ModelContext& ctx, std::mt19937_64& rng) {
  const auto m = static_cast<std::uint64_t>(ctx.modulus());
  TruncatedExtension e{ctx.model().ell(), ctx.model().level(), pick(ctx.bases(), rng), {}};
  for (int i = 0; i < ctx.model().rank(); ++i)
    e.division.push_back({static_cast<std::int64_t>(rng() % m), static_cast<std::int64_t>(rng() % m)});
  return e;
}

TruncatedExtension random_image(const TruncatedExtension& v, const ModelContext& ctx, std::mt19937_64& rng) {
  const std::int64_t m = ctx.modulus();
  std::vector<Mat2> gamma(ctx.gamma().begin(), ctx.gamma().end());
  const Mat2& g = pick(gamma, rng);
  const auto& t = pick(ctx.translations(), rng);
  const Mat2& h = pick(ctx.basis_changes(), rng);
  TruncatedExtension w = v;
  w.basis = mul(mul(g, v.basis, m), inverse(h, m), m);
  for (std::size_t i = 0; i < w.division.size(); ++i) w.division[i] = add(apply(g, v.division[i], m), t[i], m);
  return w;
}

bool matches(const TruncatedExtension& v, const TruncatedExtension& w, const ModelContext& ctx) {
  try {
    MatchState s = run_match(v, w, ctx);
    CHECK(diagram_holds(s, v, w, ctx));
    for (bool b : s.matched) CHECK(b);
    return true;
  } catch (const MatchFailure&) {
    return false;
  }
}

BackForthModel with_translations(BackForthModel m, std::vector<std::vector<Vec2>> gens, const char* name) {
  m.galois.translation_gens = std::move(gens);
  m.preset = name;
  return m;
}

std::vector<BackForthModel> test_models() {
  std::vector<BackForthModel> out;
  for (auto [ell, level] : {std::pair<std::int64_t, int>{2, 1}, {2, 2}, {3, 1}})
    for (int r : {1, 2}) {
      out.push_back(BackForthModel::trivial(ell, level, r));
      out.push_back(BackForthModel::sl2(ell, level, r));
      out.push_back(BackForthModel::full(ell, level, r));
      out.push_back(with_translations(BackForthModel::full(ell, level, r), {}, "full-gamma-no-T"));
    }
  out.push_back(with_translations(BackForthModel::full(2, 1, 2), {{{1, 0}, {0, 0}}, {{0, 1}, {0, 0}}}, "first"));
  out.push_back(with_translations(BackForthModel::full(3, 1, 2), {{{1, 0}, {1, 0}}, {{0, 1}, {0, 1}}}, "diagonal"));
  out.push_back(with_translations(BackForthModel::full(2, 2, 1), {{{2, 0}}, {{0, 2}}}, "two-torsion"));
  out.push_back(BackForthModel::cm(-4, 3, 1, 1));
  out.push_back(BackForthModel::cm(-4, 3, 1, 2));
  out.push_back(BackForthModel::cm(-3, 2, 1, 2));
  out.push_back(BackForthModel::cm(-4, 2, 2, 1));
  out.push_back(BackForthModel::cm(-4, 3, 1, 2, {{0, 1}}));
  return out;
}

}  // namespace

TEST_SUITE("backforth") {
  TEST_CASE("match agrees with direct search and with the census") {
    std::mt19937_64 rng(17);
    for (const auto& model : test_models()) {
      CAPTURE(model.preset);
      CAPTURE(model.modulus());
      CAPTURE(model.rank());
      ModelContext ctx(model);
      CensusResult census = orbit_census(ctx);
      CHECK(census.data_count == census.labels.size());
      for (int k = 0; k < 150; ++k) {
        TruncatedExtension v = random_datum(ctx, rng);
        TruncatedExtension w = (k % 2) ? random_datum(ctx, rng) : random_image(v, ctx, rng);
        const bool oracle = equivalent_by_search(v, w, ctx);
        if (k % 2 == 0) CHECK(oracle);
        CHECK(matches(v, w, ctx) == oracle);
        CHECK((census.labels[census_index(ctx, v)] == census.labels[census_index(ctx, w)]) == oracle);
      }
    }
  }

  TEST_CASE("census orbit counts") {
    for (auto [ell, level] : {std::pair<std::int64_t, int>{2, 1}, {2, 2}, {3, 1}})
      for (int r : {1, 2}) {
        ModelContext sl2(BackForthModel::sl2(ell, level, r));
        CHECK(orbit_census(sl2).orbits == 1);
        // B acts freely on bases, nothing else moves
        ModelContext triv(BackForthModel::trivial(ell, level, r));
        auto c = orbit_census(triv);
        CHECK(c.orbits * triv.basis_changes().size() == c.data_count);
      }
    ModelContext m(BackForthModel::full(2, 2, 2));
    auto c = orbit_census(m);
    CHECK(c.data_count == 24576);
    CHECK(c.orbits == 1);
    CHECK(c.basis_change_order == 96);
  }

  TEST_CASE("census index round trip") {
    for (const auto& model : {BackForthModel::full(3, 1, 2), BackForthModel::cm(-4, 3, 1, 1)}) {
      ModelContext ctx(model);
      const std::size_t n = ctx.bases().size() * static_cast<std::size_t>(std::pow(ctx.modulus(), 2 * model.rank()));
      for (std::size_t i = 0; i < n; i += 7) CHECK(census_index(ctx, census_datum(ctx, i)) == i);
    }
  }

  TEST_CASE("determinant obstruction gives NoMatch at the base step") {
    ModelContext ctx(BackForthModel::sl2(5, 1, 1));
    TruncatedExtension v{5, 1, Mat2{1, 0, 0, 1}, {{0, 0}}};
    TruncatedExtension w{5, 1, Mat2{2, 0, 0, 1}, {{0, 0}}};
    try {
      run_match(v, w, ctx);
      FAIL("expected NoMatch");
    } catch (const MatchFailure& f) {
      CHECK(f.code() == Errc::NoMatch);
      CHECK(f.step() == 0);
      const std::string what = f.what();
      CHECK(what.find("det 1") != std::string::npos);
      CHECK(what.find("det 2") != std::string::npos);
    }
    // det -1 is absorbed by the basis change
    TruncatedExtension w4{5, 1, Mat2{4, 0, 0, 1}, {{0, 0}}};
    CHECK(matches(v, w4, ctx));
  }

  TEST_CASE("identical data and trivial models") {
    ModelContext ctx(BackForthModel::full(2, 2, 2));
    TruncatedExtension v{2, 2, Mat2{3, 1, 1, 0}, {{3, 1}, {0, 2}}};
    MatchState s = run_match(v, v, ctx);
    CHECK(s.h == Mat2{1, 0, 0, 1});
    CHECK(s.gamma == Mat2{1, 0, 0, 1});
    CHECK(s.translation == std::vector<Vec2>{{0, 0}, {0, 0}});
    for (const auto& st : s.trace) CHECK(st.translation == std::vector<Vec2>{{0, 0}, {0, 0}});

    ModelContext triv(BackForthModel::trivial(5, 1, 1));
    TruncatedExtension a{5, 1, Mat2{1, 0, 0, 1}, {{0, 0}}};
    TruncatedExtension b{5, 1, Mat2{2, 0, 0, 1}, {{0, 0}}};
    try {
      run_match(a, b, triv);
      FAIL("expected NoMatch");
    } catch (const MatchFailure& f) {
      CHECK(f.code() == Errc::NoMatch);
      CHECK(f.step() == 0);
    }
  }

  TEST_CASE("missing translations give KummerDeficient") {
    auto model = with_translations(BackForthModel::full(2, 1, 1), {}, "no-T");
    ModelContext ctx(model);
    TruncatedExtension v{2, 1, Mat2{1, 0, 0, 1}, {{0, 0}}};
    TruncatedExtension w{2, 1, Mat2{1, 0, 0, 1}, {{1, 0}}};
    try {
      run_match(v, w, ctx);
      FAIL("expected KummerDeficient");
    } catch (const MatchFailure& f) {
      CHECK(f.code() == Errc::KummerDeficient);
      CHECK(f.step() == 1);
    }
    ModelContext full(BackForthModel::full(2, 1, 1));
    CHECK(matches(v, w, full));
  }

  TEST_CASE("steps alternate forth and back") {
    ModelContext ctx(BackForthModel::full(3, 1, 2));
    TruncatedExtension v{3, 1, Mat2{1, 0, 0, 1}, {{1, 2}, {0, 1}}};
    TruncatedExtension w{3, 1, Mat2{0, 2, 1, 0}, {{2, 2}, {1, 1}}};
    MatchState s = run_match(v, w, ctx);
    REQUIRE(s.trace.size() == 3);
    CHECK(s.trace[0].direction == "base");
    CHECK(s.trace[1].direction == "forth");
    CHECK(s.trace[2].direction == "back");
    CHECK(s.trace[1].generator == 0);
    CHECK(s.trace[2].generator == 1);
    CHECK(s.step == 2);
    CHECK(s.h == Mat2{1, 0, 0, 1});
    CHECK(diagram_holds(s, v, w, ctx));
    // a single inductive step only matches its own generator
    MatchState b = base_step(v, w, ctx);
    MatchState one = inductive_step(b, v, w, ctx, 1);
    CHECK(one.matched == std::vector<bool>{false, true});
    CHECK(diagram_holds(one, v, w, ctx));
    CHECK_THROWS_AS(inductive_step(one, v, w, ctx, 1), std::invalid_argument);
  }

  TEST_CASE("larger groups merge orbits") {
    // sub-model orbits refine super-model orbits
    const std::vector<std::pair<BackForthModel, BackForthModel>> chains = {
        {BackForthModel::trivial(2, 2, 1), BackForthModel::sl2(2, 2, 1)},
        {BackForthModel::sl2(3, 1, 2), BackForthModel::full(3, 1, 2)},
        {with_translations(BackForthModel::full(2, 2, 1), {{{2, 0}}, {{0, 2}}}, "two-torsion"),
         BackForthModel::full(2, 2, 1)},
    };
    for (const auto& [small, large] : chains) {
      ModelContext cs(small), cl(large);
      auto a = orbit_census(cs);
      auto b = orbit_census(cl);
      CHECK(a.orbits >= b.orbits);
      std::map<std::uint32_t, std::uint32_t> image;
      for (std::size_t i = 0; i < a.labels.size(); ++i) {
        auto [it, fresh] = image.emplace(a.labels[i], b.labels[i]);
        CHECK(it->second == b.labels[i]);
      }
    }
  }

  TEST_CASE("input validation") {
    ModelContext ctx(BackForthModel::full(3, 1, 1));
    TruncatedExtension good{3, 1, Mat2{1, 0, 0, 1}, {{0, 0}}};
    TruncatedExtension wrong_rank{3, 1, Mat2{1, 0, 0, 1}, {{0, 0}, {0, 0}}};
    TruncatedExtension wrong_ell{2, 1, Mat2{1, 0, 0, 1}, {{0, 0}}};
    CHECK_THROWS_AS(run_match(good, wrong_rank, ctx), std::invalid_argument);
    CHECK_THROWS_AS(run_match(wrong_ell, good, ctx), std::invalid_argument);
    TruncatedExtension singular{3, 1, Mat2{1, 1, 1, 1}, {{0, 0}}};
    CHECK_THROWS_AS(singular.validate(), std::invalid_argument);
    good.validate();
    // a CM basis must be multiplication by a unit
    ModelContext cm(BackForthModel::cm(-4, 3, 1, 1));
    CHECK_FALSE(cm.admissible(TruncatedExtension{3, 1, Mat2{1, 0, 0, 2}, {{0, 0}}}));
    CHECK(cm.admissible(TruncatedExtension{3, 1, Mat2{0, 2, 1, 0}, {{0, 0}}}));
    CHECK_THROWS_AS(BackForthModel::cm(-4, 3, 1, 1, {{0, 0}}), Error);
    auto unstable = with_translations(BackForthModel::full(3, 1, 1), {{{1, 0}}}, "unstable");
    CHECK_THROWS_AS(ModelContext{unstable}, std::invalid_argument);
  }

  TEST_CASE("census budget") {
    setenv("GDL_ENUM_BUDGET", "100", 1);
    ModelContext ctx(BackForthModel::full(3, 1, 1));
    try {
      orbit_census(ctx);
      FAIL("expected EnumerationTooLarge");
    } catch (const Error& e) {
      CHECK(e.code() == Errc::EnumerationTooLarge);
    }
    unsetenv("GDL_ENUM_BUDGET");
    ModelContext big(BackForthModel::full(3, 2, 1));
    CHECK_THROWS_AS(orbit_census(big), Error);
  }
}
