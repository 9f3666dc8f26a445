#include <doctest.h>

#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "gdl/cli.hpp"

using nlohmann::json;
using gdl::cli::dispatch;

namespace {

json run_ok(const std::vector<std::string>& args) {
  auto o = dispatch(args);
  INFO(o.output);
  REQUIRE(o.exit_code == 0);
  return json::parse(o.output);
}

json run_fail(const std::vector<std::string>& args, int code) {
  auto o = dispatch(args);
  INFO(o.output);
  REQUIRE(o.exit_code == code);
  json j = json::parse(o.output);
  REQUIRE(j.contains("error"));
  return j["error"];
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("documented examples") {
    json c = run_ok({"ec", "count", "--curve", "1;1", "--prime", "5"});
    CHECK(c["points"] == 9);
    CHECK(c["a_p"] == -3);
    CHECK(c["structure"] == json::array({1, 9}));
    CHECK(run_ok({"lattice", "orbits", "--modulus", "2"})["orbits"] == 1);
    CHECK(run_ok({"cm", "units", "--disc", "-4", "--modulus", "3"})["unit_order"] == 8);
    json o = run_ok({"cm", "orbits", "--disc", "-4", "--modulus", "3", "--gens", "[[0,1]]"});
    CHECK(o["index"] == 2);
    CHECK(o["orbits"] == 2);
  }

  TEST_CASE("lattice subcommands") {
    json t = run_ok({"lattice", "transfer", "--modulus", "4", "--level", "2", "--from", "[[1,0],[0,1]]", "--to",
                     "[[3,2],[2,3]]"});
    CHECK(t["exists"] == true);
    CHECK(t["transfer"] == json::parse("[[3,2],[2,3]]"));
    json no = run_ok({"lattice", "transfer", "--modulus", "4", "--from", "[[1,0],[0,1]]", "--to", "[[3,0],[0,1]]"});
    CHECK(no["exists"] == false);
    CHECK(no["transfer"].is_null());
    json f = run_ok({"lattice", "complement", "--matrix", "[[1],[1]]"});
    CHECK(f["morphism"] == json::parse("[[1,-1]]"));
    CHECK(run_ok({"lattice", "orbits", "--modulus", "4", "--level", "4"})["orbits"] == 48);
    CHECK(run_fail({"lattice", "complement", "--matrix", "[[2],[0]]"}, 1)["kind"] == "NotSaturated");
    CHECK(run_fail({"lattice", "orbits", "--modulus", "13"}, 1)["kind"] == "EnumerationTooLarge");
  }

  TEST_CASE("image and kummer reports") {
    json r = run_ok({"ec", "image", "--curve", "1;1", "--ell", "2"});
    CHECK(r["verdict"] == "Surjective");
    CHECK(r["scope"] == "mod-l only");
    CHECK(r["signatures"].size() == r["fixed_dims"].size());
    json k = run_ok({"kummer", "density", "--curve", "-1;1", "--point", "1,1", "--ell", "2", "--prime-bound", "2000"});
    CHECK(k["model"] == "5/8");
    CHECK(k["verdict"] == "full");
    CHECK(run_fail({"kummer", "density", "--curve", "0;1", "--point", "2,3", "--ell", "2"}, 1)["kind"] ==
          "TorsionPoint");
  }

  TEST_CASE("backforth subcommands") {
    json m = run_ok({"backforth", "run", "--ell", "2", "--level", "2", "--rank", "2", "--model", "sl2"});
    CHECK(m["verdict"] == "match");
    CHECK(m["diagram_holds"] == true);
    CHECK(m["trace"].size() == 3);
    json c = run_ok({"backforth", "census", "--ell", "2", "--model", "sl2"});
    CHECK(c["orbits"] == 1);
    CHECK(c["data_count"] == 6 * 4);
    json nm = run_fail({"backforth", "run", "--ell", "5", "--model", "sl2", "--v",
                        R"({"basis":[[1,0],[0,1]],"division":[[0,0]]})", "--w",
                        R"({"basis":[[2,0],[0,1]],"division":[[0,0]]})"},
                       1);
    CHECK(nm["kind"] == "NoMatch");
    CHECK(nm["step"] == 0);
    json kd = run_fail({"backforth", "run", "--ell", "2", "--model", R"({"gamma":[],"translations":[]})", "--v",
                        R"({"basis":[[1,0],[0,1]],"division":[[0,0]]})", "--w",
                        R"({"basis":[[1,0],[0,1]],"division":[[1,0]]})"},
                       1);
    CHECK(kd["kind"] == "KummerDeficient");
    CHECK(kd["step"] == 1);
    json cm = run_ok({"backforth", "census", "--ell", "3", "--model", "cm:-4"});
    CHECK(cm["orbits"] == 1);
  }

  TEST_CASE("usage errors name the flag") {
    CHECK(run_fail({"ec", "count", "--curve", "1;1"}, 2)["flag"] == "--prime");
    CHECK(run_fail({"ec", "count", "--curve", "1x1", "--prime", "5"}, 2)["flag"] == "--curve");
    CHECK(run_fail({"ec", "count", "--curve", "1;1", "--prime", "4"}, 2)["flag"] == "--prime");
    CHECK(run_fail({"ec", "image", "--curve", "1;1", "--ell", "17"}, 2)["flag"] == "--ell");
    CHECK(run_fail({"kummer", "density", "--curve", "-1;1", "--point", "1,1", "--ell", "2", "--prime-bound",
                    "2000000"},
                   2)["flag"] == "--prime-bound");
    CHECK(run_fail({"cm", "units", "--disc", "-5", "--modulus", "3"}, 2)["flag"] == "--disc");
    CHECK(run_fail({"lattice", "orbits", "--modulus", "4", "--gens", "[[1,2"}, 2)["flag"] == "--gens");
    CHECK(run_fail({"backforth", "run", "--ell", "2", "--model", "bogus"}, 2)["flag"] == "--model");
    CHECK(run_fail({"ec"}, 2)["kind"] == "UsageError");
    CHECK(run_fail({}, 2)["kind"] == "UsageError");
    // a domain error, not a usage error
    CHECK(run_fail({"ec", "count", "--curve", "0;0", "--prime", "5"}, 1)["kind"] == "SingularCurve");
    CHECK(run_fail({"ec", "count", "--curve", "1;1", "--prime", "31"}, 1)["kind"] == "BadReduction");
  }

  TEST_CASE("help, pretty and out") {
    auto h = dispatch({"ec", "count", "--help"});
    CHECK(h.exit_code == 0);
    CHECK(json::parse(h.output).contains("help"));
    auto compact = dispatch({"lattice", "orbits", "--modulus", "3"});
    auto pretty = dispatch({"lattice", "orbits", "--modulus", "3", "--pretty"});
    CHECK(pretty.output != compact.output);
    CHECK(json::parse(pretty.output) == json::parse(compact.output));
    const std::string path = "cli_out_test.json";
    auto written = dispatch({"cm", "units", "--disc", "-3", "--modulus", "7", "--out", path});
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    CHECK(ss.str() == written.output);
    std::remove(path.c_str());
  }

  TEST_CASE("seeded sampling is reproducible") {
    const std::vector<std::string> a = {"backforth", "run", "--ell", "3", "--rank", "2", "--seed", "5"};
    CHECK(dispatch(a).output == dispatch(a).output);
    auto b = a;
    b.back() = "6";
    CHECK(json::parse(dispatch(a).output)["v"] != json::parse(dispatch(b).output)["v"]);
  }
}
