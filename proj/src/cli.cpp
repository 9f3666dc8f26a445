#include "gdl/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <random>
#include <regex>
#include <stdexcept>

#include "gdl/backforth.hpp"
#include "gdl/cm_orbits.hpp"
#include "gdl/curve.hpp"
#include "gdl/galois_image.hpp"
#include "gdl/kummer.hpp"
#include "gdl/lattice.hpp"

namespace gdl::cli {

namespace {

using json = nlohmann::json;

constexpr std::uint64_t kDefaultSeed = 20240601;
constexpr std::int64_t kMaxPrimeBound = 1000000;

class UsageError : public std::runtime_error {
 public:
  UsageError(std::string flag, const std::string& what) : std::runtime_error(what), flag_(std::move(flag)) {}
  const std::string& flag() const { return flag_; }

 private:
  std::string flag_;
};

// ---------------------------------------------------------------------------
// Flag decoding.

json parse_json_flag(const std::string& flag, const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw UsageError(flag, flag + ": invalid JSON (" + std::string(e.what()) + ")");
  }
}

std::int64_t json_int(const std::string& flag, const json& j) {
  if (!j.is_number_integer()) throw UsageError(flag, flag + ": expected an integer, got " + j.dump());
  return j.get<std::int64_t>();
}

const json& json_array(const std::string& flag, const json& j, std::size_t size) {
  if (!j.is_array() || (size != 0 && j.size() != size))
    throw UsageError(flag, flag + ": expected an array" + (size ? " of length " + std::to_string(size) : "") +
                               ", got " + j.dump());
  return j;
}

Vec2 json_vec(const std::string& flag, const json& j, std::int64_t m) {
  json_array(flag, j, 2);
  return {mod(json_int(flag, j[0]), m), mod(json_int(flag, j[1]), m)};
}

// [[a, b], [c, d]], row-major
Mat2 json_matrix(const std::string& flag, const json& j, std::int64_t m) {
  json_array(flag, j, 2);
  Vec2 r0 = json_vec(flag, j[0], m), r1 = json_vec(flag, j[1], m);
  return {r0.x, r0.y, r1.x, r1.y};
}

// [[u0x, u0y], [u1x, u1y]], the columns of a basis
Mat2 json_pair(const std::string& flag, const json& j, std::int64_t m) {
  json_array(flag, j, 2);
  return Mat2::from_columns(json_vec(flag, j[0], m), json_vec(flag, j[1], m));
}

json vec_json(Vec2 v) { return json::array({v.x, v.y}); }
json matrix_json(const Mat2& g) { return json::array({json::array({g.a, g.b}), json::array({g.c, g.d})}); }
json pair_json(const Mat2& u) { return json::array({vec_json(u.col0()), vec_json(u.col1())}); }

json big_json(const BigInt& x) {
  if (x >= std::numeric_limits<std::int64_t>::min() && x <= std::numeric_limits<std::int64_t>::max())
    return static_cast<std::int64_t>(x);
  return x.str();
}

json int_matrix_json(const IntMatrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(big_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

RationalCurve curve_flag(const std::string& text) {
  try {
    return parse_curve(text);
  } catch (const Error& e) {
    if (e.code() == Errc::ParseError) throw UsageError("--curve", std::string("--curve: ") + e.what());
    throw;
  }
}

RationalPoint point_flag(const std::string& text) {
  try {
    return parse_point(text);
  } catch (const Error& e) {
    if (e.code() == Errc::ParseError) throw UsageError("--point", std::string("--point: ") + e.what());
    throw;
  }
}

std::string curve_text(const RationalCurve& e) { return to_string(e.a()) + ";" + to_string(e.b()); }

void require_prime(const std::string& flag, std::int64_t p) {
  if (p < 2 || p > kMaxPrimeBound || !is_prime(static_cast<std::uint64_t>(p)))
    throw UsageError(flag, flag + ": " + std::to_string(p) + " is not a prime <= " + std::to_string(kMaxPrimeBound));
}

void require_bound(std::int64_t bound) {
  if (bound < 1 || bound > kMaxPrimeBound)
    throw UsageError("--prime-bound", "--prime-bound must lie in [1, " + std::to_string(kMaxPrimeBound) + "]");
}

void require_range(const std::string& flag, std::int64_t v, std::int64_t lo, std::int64_t hi) {
  if (v < lo || v > hi)
    throw UsageError(flag, flag + " must lie in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
}

// ---------------------------------------------------------------------------
// Subcommands.

struct Flags {
  std::string curve, point, model = "full", from, to, matrix, gens, v, w, out;
  std::int64_t ell = 2, modulus = 2, level = 0, rank = 1, prime = 5, prime_bound = 0, disc = -4;
  std::uint64_t seed = kDefaultSeed;
  bool pretty = false;
};

json ec_count(const Flags& f) {
  RationalCurve e = curve_flag(f.curve);
  require_prime("--prime", f.prime);
  PrimeCurve ep = reduce(e, f.prime);
  const std::int64_t n = count_points(ep);
  GroupStructure g = group_structure(ep);
  return {{"curve", curve_text(e)},
          {"prime", f.prime},
          {"points", n},
          {"a_p", f.prime + 1 - n},
          {"structure", json::array({g.n1, g.n2})}};
}

json ec_image(const Flags& f) {
  RationalCurve e = curve_flag(f.curve);
  if (!supported_image_ell(f.ell)) throw UsageError("--ell", "--ell must be one of 2, 3, 5, 7, 11, 13");
  const std::int64_t bound = f.prime_bound ? f.prime_bound : 1000;
  require_bound(bound);
  if (bound < 100) throw UsageError("--prime-bound", "--prime-bound must be at least 100 for ec image");
  ImageReport r = mod_ell_image(e, f.ell, bound);
  json sigs = json::array(), dims = json::array(), surv = json::array();
  for (const auto& s : r.signatures) {
    sigs.push_back(json::array({s.p, s.trace, s.det}));
    dims.push_back(s.fixed_dim);
  }
  for (auto t : r.surviving) surv.push_back(subgroup_type_name(t, r.ell));
  return {{"curve", curve_text(e)},
          {"ell", r.ell},
          {"prime_bound", r.prime_bound},
          {"signatures", sigs},
          {"fixed_dims", dims},
          {"verdict", r.verdict == Verdict::Surjective ? "Surjective" : "Inconclusive"},
          {"surviving", surv},
          {"scope", r.scope},
          {"witnesses", {{"u", r.witnesses.u}, {"v", r.witnesses.v}, {"w", r.witnesses.w}}}};
}

json lattice_orbits(const Flags& f) {
  require_range("--modulus", f.modulus, 2, 1000);
  SubgroupSpec spec = SubgroupSpec::full();
  std::string kind = "full";
  if (!f.gens.empty()) {
    std::vector<Mat2> gens;
    const json j = parse_json_flag("--gens", f.gens);
    for (const auto& g : json_array("--gens", j, 0))
      gens.push_back(json_matrix("--gens", g, f.modulus));
    spec = SubgroupSpec::explicit_generators(std::move(gens));
    kind = "explicit";
  } else if (f.level != 0) {
    spec = SubgroupSpec::congruence(f.level);
    kind = "congruence";
  }
  OrbitCount c = orbit_count(f.modulus, spec);
  json reps = json::array();
  for (const auto& p : c.representatives) reps.push_back(pair_json(p.matrix()));
  json out = {{"modulus", c.modulus}, {"subgroup", kind}, {"pairs", c.pairs}, {"orbits", c.orbits},
              {"representatives", reps}};
  if (kind == "congruence") out["level"] = f.level;
  return out;
}

json lattice_transfer(const Flags& f) {
  require_range("--modulus", f.modulus, 2, 1000000);
  if (f.from.empty() || f.to.empty()) throw UsageError(f.from.empty() ? "--from" : "--to", "--from and --to are required");
  const std::int64_t level = f.level ? f.level : 1;
  Mat2 a = json_pair("--from", parse_json_flag("--from", f.from), f.modulus);
  Mat2 b = json_pair("--to", parse_json_flag("--to", f.to), f.modulus);
  GeneratorPair from = GeneratorPair::from_matrix(a, f.modulus);
  GeneratorPair to = GeneratorPair::from_matrix(b, f.modulus);
  auto l = transfer_matrix(from, to, level);
  return {{"modulus", f.modulus},
          {"level", level},
          {"det_from", det_pair(from).value()},
          {"det_to", det_pair(to).value()},
          {"exists", l.has_value()},
          {"transfer", l ? matrix_json(*l) : json(nullptr)}};
}

json lattice_complement(const Flags& f) {
  if (f.matrix.empty()) throw UsageError("--matrix", "--matrix is required");
  const json j = json_array("--matrix", parse_json_flag("--matrix", f.matrix), 0);
  if (j.empty()) throw UsageError("--matrix", "--matrix needs at least one row");
  const std::size_t n = j.size();
  const std::size_t cols = json_array("--matrix", j[0], 0).size();
  IntMatrix b(n, cols);
  for (std::size_t i = 0; i < n; ++i) {
    json_array("--matrix", j[i], cols);
    for (std::size_t k = 0; k < cols; ++k) b(i, k) = json_int("--matrix", j[i][k]);
  }
  IntMatrix fm = complement_morphism(b, n);
  return {{"ambient_rank", n}, {"sublattice_rank", n - fm.rows()}, {"morphism", int_matrix_json(fm)}};
}

QuadOrder order_flag(std::int64_t disc) {
  try {
    return QuadOrder(disc);
  } catch (const std::invalid_argument& e) {
    throw UsageError("--disc", std::string("--disc: ") + e.what());
  }
}

json cm_units(const Flags& f) {
  QuadOrder o = order_flag(f.disc);
  require_range("--modulus", f.modulus, 2, 3000);
  ResidueRingUnits u = unit_group(o, f.modulus);
  json elems = json::array();
  for (const auto& x : u.elements) elems.push_back(json::array({x.a, x.b}));
  return {{"disc", f.disc}, {"conductor", o.conductor()}, {"modulus", f.modulus}, {"unit_order", u.order()},
          {"units", elems}};
}

std::vector<QuadResidue> unit_gens_flag(const std::string& text) {
  std::vector<QuadResidue> gens;
  const json j = parse_json_flag("--gens", text);
  for (const auto& g : json_array("--gens", j, 0)) {
    json_array("--gens", g, 2);
    gens.push_back({json_int("--gens", g[0]), json_int("--gens", g[1])});
  }
  return gens;
}

json cm_orbits(const Flags& f) {
  QuadOrder o = order_flag(f.disc);
  require_range("--modulus", f.modulus, 2, 3000);
  std::vector<QuadResidue> gens = f.gens.empty() ? unit_group(o, f.modulus).elements : unit_gens_flag(f.gens);
  for (auto& g : gens) g = {mod(g.a, f.modulus), mod(g.b, f.modulus)};
  CmOrbitCount c = orbit_count_cm(o, f.modulus, gens);
  return {{"disc", c.disc},           {"modulus", c.modulus}, {"unit_order", c.unit_order},
          {"subgroup_order", c.subgroup_order}, {"index", c.index},     {"orbits", c.orbits}};
}

json kummer_density(const Flags& f) {
  RationalCurve e = curve_flag(f.curve);
  RationalPoint p = point_flag(f.point);
  require_prime("--ell", f.ell);
  const std::int64_t bound = f.prime_bound ? f.prime_bound : 10000;
  require_bound(bound);
  KummerReport r = kummer_report(e, p, f.ell, bound);
  return {{"curve", curve_text(e)},
          {"point", format_point(p)},
          {"ell", r.ell},
          {"prime_bound", r.prime_bound},
          {"primes", r.primes},
          {"divisible_count", r.divisible_count},
          {"empirical", r.empirical},
          {"model", to_string(r.model)},
          {"model_value", static_cast<double>(r.model)},
          {"sigma_distance", r.sigma_distance},
          {"verdict", r.verdict}};
}

// --model: full | sl2 | trivial | cm:D | JSON object {"gamma": [...], "translations": [...],
// "basis_changes": [...]} (basis_changes optional)
BackForthModel model_flag(const Flags& f) {
  require_prime("--ell", f.ell);
  const int level = static_cast<int>(f.level ? f.level : 1);
  require_range("--level", level, 1, 6);
  require_range("--rank", f.rank, 1, 4);
  const int r = static_cast<int>(f.rank);
  if (f.model == "full") return BackForthModel::full(f.ell, level, r);
  if (f.model == "sl2") return BackForthModel::sl2(f.ell, level, r);
  if (f.model == "trivial") return BackForthModel::trivial(f.ell, level, r);
  if (f.model.rfind("cm:", 0) == 0) {
    std::int64_t disc = 0;
    try {
      std::size_t used = 0;
      disc = std::stoll(f.model.substr(3), &used);
      if (used != f.model.size() - 3) throw std::invalid_argument("trailing characters");
    } catch (const std::exception&) {
      throw UsageError("--model", "--model: cm:D needs an integer discriminant, got '" + f.model + "'");
    }
    order_flag(disc);
    std::vector<std::pair<std::int64_t, std::int64_t>> sub;
    if (!f.gens.empty())
      for (const auto& g : unit_gens_flag(f.gens)) sub.emplace_back(g.a, g.b);
    return BackForthModel::cm(disc, f.ell, level, r, sub);
  }
  if (!f.model.empty() && f.model.front() == '{') {
    const json j = parse_json_flag("--model", f.model);
    BackForthModel m = BackForthModel::full(f.ell, level, r);
    m.preset = "custom";
    const std::int64_t n = m.modulus();
    m.galois.gamma_gens.clear();
    m.galois.translation_gens.clear();
    if (j.contains("gamma"))
      for (const auto& g : json_array("--model", j["gamma"], 0)) m.galois.gamma_gens.push_back(json_matrix("--model", g, n));
    if (j.contains("translations"))
      for (const auto& t : json_array("--model", j["translations"], 0)) {
        std::vector<Vec2> tv;
        for (const auto& v : json_array("--model", t, static_cast<std::size_t>(r))) tv.push_back(json_vec("--model", v, n));
        m.galois.translation_gens.push_back(std::move(tv));
      }
    if (j.contains("basis_changes")) {
      m.basis_change_gens.clear();
      for (const auto& g : json_array("--model", j["basis_changes"], 0))
        m.basis_change_gens.push_back(json_matrix("--model", g, n));
    }
    return m;
  }
  throw UsageError("--model", "--model must be full, sl2, trivial, cm:D or a JSON object, got '" + f.model + "'");
}

ModelContext context_for(const BackForthModel& m) {
  try {
    return ModelContext(m);
  } catch (const std::invalid_argument& e) {
    throw UsageError("--model", std::string("--model: ") + e.what());
  }
}

json model_json(const ModelContext& ctx) {
  const BackForthModel& m = ctx.model();
  return {{"preset", m.preset},
          {"ell", m.ell()},
          {"level", m.level()},
          {"rank", m.rank()},
          {"modulus", m.modulus()},
          {"gamma_order", ctx.gamma().size()},
          {"translation_order", ctx.translations().size()},
          {"basis_change_order", ctx.basis_changes().size()}};
}

// {"basis": [[u0x, u0y], [u1x, u1y]], "division": [[x, y], ...]}
TruncatedExtension extension_flag(const std::string& flag, const std::string& text, const ModelContext& ctx) {
  const json j = parse_json_flag(flag, text);
  if (!j.is_object() || !j.contains("basis") || !j.contains("division"))
    throw UsageError(flag, flag + ": expected {\"basis\": [[..],[..]], \"division\": [[..], ...]}");
  const std::int64_t n = ctx.modulus();
  TruncatedExtension e{ctx.model().ell(), ctx.model().level(), json_pair(flag, j["basis"], n), {}};
  for (const auto& d : json_array(flag, j["division"], static_cast<std::size_t>(ctx.model().rank())))
    e.division.push_back(json_vec(flag, d, n));
  if (!ctx.admissible(e)) throw UsageError(flag, flag + ": basis is not admissible for the model");
  return e;
}

TruncatedExtension random_extension(const ModelContext& ctx, std::mt19937_64& rng) {
  const auto& bases = ctx.bases();
  const auto n = static_cast<std::uint64_t>(ctx.modulus());
  TruncatedExtension e{ctx.model().ell(), ctx.model().level(), bases[rng() % bases.size()], {}};
  for (int i = 0; i < ctx.model().rank(); ++i)
    e.division.push_back({static_cast<std::int64_t>(rng() % n), static_cast<std::int64_t>(rng() % n)});
  return e;
}

json extension_json(const TruncatedExtension& e) {
  json d = json::array();
  for (const Vec2& v : e.division) d.push_back(vec_json(v));
  return {{"basis", pair_json(e.basis)}, {"division", d}};
}

json translation_json(const std::vector<Vec2>& t) {
  json out = json::array();
  for (const Vec2& v : t) out.push_back(vec_json(v));
  return out;
}

json backforth_run(const Flags& f) {
  ModelContext ctx = context_for(model_flag(f));
  std::mt19937_64 rng(f.seed);
  TruncatedExtension v = f.v.empty() ? random_extension(ctx, rng) : extension_flag("--v", f.v, ctx);
  TruncatedExtension w = f.w.empty() ? random_extension(ctx, rng) : extension_flag("--w", f.w, ctx);
  MatchState s = run_match(v, w, ctx);
  json trace = json::array();
  for (const auto& st : s.trace)
    trace.push_back({{"step", st.step},
                     {"direction", st.direction},
                     {"generator", st.generator < 0 ? json(nullptr) : json(st.generator)},
                     {"gamma", matrix_json(st.gamma)},
                     {"translation", translation_json(st.translation)}});
  return {{"model", model_json(ctx)},
          {"seed", f.seed},
          {"v", extension_json(v)},
          {"w", extension_json(w)},
          {"verdict", "match"},
          {"trace", trace},
          {"h", matrix_json(s.h)},
          {"gamma", matrix_json(s.gamma)},
          {"translation", translation_json(s.translation)},
          {"diagram_holds", diagram_holds(s, v, w, ctx)}};
}

json backforth_census(const Flags& f) {
  ModelContext ctx = context_for(model_flag(f));
  CensusResult c = orbit_census(ctx);
  return {{"model", model_json(ctx)}, {"data_count", c.data_count}, {"orbits", c.orbits}};
}

json error_json(const std::string& kind, const std::string& message) {
  return {{"error", {{"kind", kind}, {"message", message}}}};
}

std::string flag_in(const std::string& message) {
  static const std::regex flag_re("--[a-z][a-z-]*");
  std::smatch m;
  return std::regex_search(message, m, flag_re) ? m.str() : std::string();
}

}  // namespace

Outcome dispatch(const std::vector<std::string>& args) {
  Flags f;
  CLI::App app{"Finite-level Galois orbit and divisibility computations on elliptic curves", "gdl"};
  app.fallthrough();
  app.require_subcommand(1);
  app.add_flag("--pretty", f.pretty, "Indent the JSON output");
  app.add_option("--out", f.out, "Also write the JSON document to FILE");
  app.add_option("--seed", f.seed, "Seed for sampled inputs")->capture_default_str();

  using Leaf = std::pair<CLI::App*, json (*)(const Flags&)>;
  std::vector<Leaf> leaves;
  auto group = [&](const std::string& name, const std::string& help) {
    CLI::App* g = app.add_subcommand(name, help);
    g->require_subcommand(1);
    return g;
  };
  auto leaf = [&](CLI::App* parent, const std::string& name, const std::string& help, json (*run)(const Flags&)) {
    CLI::App* s = parent->add_subcommand(name, help);
    leaves.emplace_back(s, run);
    return s;
  };

  CLI::App* ec = group("ec", "Curves over finite fields and mod-l images");
  CLI::App* s = leaf(ec, "count", "Point count and group structure mod p", ec_count);
  s->add_option("--curve", f.curve, "y^2 = x^3 + a x + b as \"a;b\"")->required();
  s->add_option("--prime", f.prime, "Prime p")->required();
  s = leaf(ec, "image", "Frobenius signature scan and mod-l image verdict", ec_image);
  s->add_option("--curve", f.curve, "\"a;b\"")->required();
  s->add_option("--ell", f.ell, "l in {2, 3, 5, 7, 11, 13}")->required();
  s->add_option("--prime-bound", f.prime_bound, "Largest prime scanned (default 1000)");

  CLI::App* lat = group("lattice", "Generator pairs, transfers and complements");
  s = leaf(lat, "orbits", "Orbits of a subgroup of SL_2 on det-1 generator pairs", lattice_orbits);
  s->add_option("--modulus", f.modulus, "N")->required();
  s->add_option("--level", f.level, "Congruence level (kernel of reduction mod level)");
  s->add_option("--gens", f.gens, "Explicit generators as JSON [[[a,b],[c,d]], ...]");
  s = leaf(lat, "transfer", "SL_2 transfer congruent to 1 mod the level", lattice_transfer);
  s->add_option("--modulus", f.modulus, "M")->required();
  s->add_option("--level", f.level, "N dividing M (default 1)");
  s->add_option("--from", f.from, "Pair as JSON [[u0x,u0y],[u1x,u1y]]")->required();
  s->add_option("--to", f.to, "Pair as JSON [[u0x,u0y],[u1x,u1y]]")->required();
  s = leaf(lat, "complement", "Complement morphism of a saturated sublattice", lattice_complement);
  s->add_option("--matrix", f.matrix, "Basis columns as JSON rows [[..], ...]")->required();

  CLI::App* cm = group("cm", "Residue rings of imaginary quadratic orders");
  s = leaf(cm, "units", "Unit group of O/NO", cm_units);
  s->add_option("--disc", f.disc, "Discriminant D < 0")->required();
  s->add_option("--modulus", f.modulus, "N")->required();
  s = leaf(cm, "orbits", "Orbits of a unit subgroup on generators of O/NO", cm_orbits);
  s->add_option("--disc", f.disc, "Discriminant D < 0")->required();
  s->add_option("--modulus", f.modulus, "N")->required();
  s->add_option("--gens", f.gens, "Subgroup generators a + b w as JSON [[a,b], ...] (default: all units)");

  CLI::App* km = group("kummer", "Divisibility densities");
  s = leaf(km, "density", "Empirical l-divisibility density against the full affine model", kummer_density);
  s->add_option("--curve", f.curve, "\"a;b\"")->required();
  s->add_option("--point", f.point, "\"x,y\"")->required();
  s->add_option("--ell", f.ell, "Prime l")->required();
  s->add_option("--prime-bound", f.prime_bound, "Largest prime sampled (default 10000)");

  CLI::App* bf = group("backforth", "Back-and-forth matching on finite models");
  for (auto [name, help, run] : {std::tuple{"run", "Match two extension data step by step", backforth_run},
                                 std::tuple{"census", "Orbit census of all extension data", backforth_census}}) {
    s = leaf(bf, name, help, run);
    s->add_option("--ell", f.ell, "Prime l")->required();
    s->add_option("--level", f.level, "m, modulus l^m (default 1)");
    s->add_option("--rank", f.rank, "Number of generators r (default 1)");
    s->add_option("--model", f.model, "full | sl2 | trivial | cm:D | JSON generators (default full)");
    s->add_option("--gens", f.gens, "cm:D only: unit subgroup generators [[a,b], ...]");
    if (std::string(name) == "run") {
      s->add_option("--v", f.v, "JSON {\"basis\": [[..],[..]], \"division\": [[..], ...]} (default: sampled)");
      s->add_option("--w", f.w, "Same shape as --v (default: sampled)");
    }
  }

  auto finish = [&](int code, const json& doc) {
    Outcome o{code, (f.pretty ? doc.dump(2) : doc.dump()) + "\n"};
    if (!f.out.empty()) {
      std::ofstream file(f.out, std::ios::binary);
      file << o.output;
      if (!file) {
        json err = {{"error", {{"kind", "UsageError"}, {"message", "cannot write --out file " + f.out}, {"flag", "--out"}}}};
        return Outcome{2, err.dump() + "\n"};
      }
    }
    return o;
  };

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    CLI::App* deepest = &app;
    while (!deepest->get_subcommands().empty()) deepest = deepest->get_subcommands().front();
    return finish(0, json{{"help", deepest->help()}});
  } catch (const CLI::CallForAllHelp&) {
    return finish(0, json{{"help", app.help("", CLI::AppFormatMode::All)}});
  } catch (const CLI::ParseError& e) {
    json err = error_json("UsageError", e.what());
    const std::string flag = flag_in(e.what());
    if (!flag.empty()) err["error"]["flag"] = flag;
    return finish(2, err);
  }

  try {
    for (const auto& [sub, run] : leaves)
      if (sub->parsed()) return finish(0, run(f));
    return finish(2, error_json("UsageError", "no subcommand given"));
  } catch (const UsageError& e) {
    json err = error_json("UsageError", e.what());
    err["error"]["flag"] = e.flag();
    return finish(2, err);
  } catch (const MatchFailure& e) {
    json err = error_json(std::string(errc_name(e.code())), e.what());
    err["error"]["step"] = e.step();
    return finish(1, err);
  } catch (const Error& e) {
    return finish(1, error_json(std::string(errc_name(e.code())), e.what()));
  } catch (const std::invalid_argument& e) {
    // preconditions not already tied to a single flag
    return finish(2, error_json("UsageError", e.what()));
  }
}

}  // namespace gdl::cli
