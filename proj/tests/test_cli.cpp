#include <cstdio>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "polytopo/cli.hpp"
#include "polytopo/errors.hpp"

using namespace polytopo;
using Json = nlohmann::json;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result call(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

Json payload(const Result& r) { return Json::parse(r.out).at("payload"); }

const std::string kXY = R"({"variables": ["x", "y"], "targets": ["z1", "z2"], "map": ["x", "x*y"]})";
const std::string kCubic = R"({"variables": ["x"], "targets": ["z"], "map": ["x^3 - 3*x"]})";
const std::string kFamily =
    R"({"parameters": ["m"], "variables": ["x"], "targets": ["z"], "map": ["x^2 + m*x"]})";

}  // namespace

TEST_CASE("map and family files") {
  auto f = cli::parse_map_json(kXY);
  CHECK(f.domain_dim() == 2);
  CHECK(f.target_dim() == 2);
  auto fam = cli::parse_family_json(kFamily);
  CHECK(fam.param_dim() == 1);

  auto message = [](auto&& fn) {
    try {
      fn();
    } catch (const InputError& e) {
      return std::string(e.what());
    }
    return std::string();
  };
  CHECK(message([] { cli::parse_map_json(R"({"variables": ["x"], "targets": ["x"], "map": ["x"]})"); })
            .find("'x'") != std::string::npos);
  CHECK(message([] { cli::parse_map_json(R"({"variables": ["x"], "targets": ["z"]})"); })
            .find("'map'") != std::string::npos);
  CHECK(message([] { cli::parse_map_json(R"({"variables": ["x", 3], "targets": ["z"], "map": ["x"]})"); })
            .find("variables[1]") != std::string::npos);
  CHECK(message([] { cli::parse_map_json(R"({"variables": ["x"], "targets": ["z"], "map": ["y"]})"); })
            .find("map[0]") != std::string::npos);
  CHECK(message([] {
          cli::parse_family_json(
              R"({"parameters": ["x"], "variables": ["x"], "targets": ["z"], "map": ["x"]})");
        }).find("parameters") != std::string::npos);
  CHECK_THROWS_AS(cli::parse_map_json("{not json"), InputError);
  CHECK_THROWS_AS(cli::read_input("/nonexistent/map.json"), InputError);
}

TEST_CASE("report layout") {
  auto r = call({"degree", "--map", kXY});
  REQUIRE(r.code == 0);
  auto j = Json::parse(r.out);
  CHECK(j.at("command") == "degree");
  CHECK(j.at("seed").get<std::uint64_t>() > 0);
  CHECK(j.contains("version"));
  CHECK(j.at("input_hash").get<std::string>().size() == 16);
  CHECK(j.at("warnings").is_array());
  CHECK(j.at("payload").at("mu") == 1);
}

TEST_CASE("map commands") {
  CHECK(payload(call({"jelonek", "--map", kXY})).at("jelonek") == Json::array({"z1"}));
  CHECK(payload(call({"proper", "--map", kCubic})).at("proper") == true);
  CHECK(payload(call({"critical", "--map", kCubic})).at("critical_values") ==
        Json::array({"z^2 - 4"}));
  auto b = payload(call({"bifurcation", "--map", kCubic}));
  CHECK(b.at("bifurcation") == Json::array({"z^2 - 4"}));
  CHECK(b.at("degree").at("mu") == 3);
  auto fib = payload(call({"fiber", "--map", kCubic, "--at", "2"}));
  CHECK(fib.at("distinct") == 2);
  CHECK(fib.at("with_multiplicity") == 3);
  auto c = payload(call({"classify", "--map", kCubic}));
  CHECK(c.at("bound") == 13);
  CHECK(c.at("mu") == 3);
  CHECK(c.at("r") == 2);
  CHECK(c.at("bound_relation") == "<=");
}

TEST_CASE("family commands") {
  auto d = payload(call({"family", "degree", "--family", kFamily, "--random-samples", "5"}));
  CHECK(d.at("mu") == 2);
  CHECK(d.at("agreeing") == 5);
  auto p = payload(call({"family", "partition", "--family", kFamily, "--samples", "1;2;-3/2"}));
  CHECK(p.at("class_count") == 1);
  CHECK(p.at("classes")[0].at("samples") == Json::array({0, 1, 2}));
  auto c = payload(call({"family", "classify", "--family", kFamily, "--random-samples", "4"}));
  CHECK(c.at("bound") == 1);
  auto a = payload(call({"family", "analyze", "--family", kFamily, "--samples", "2"}));
  CHECK(a.at("members")[0].at("report").at("bifurcation") == Json::array({"z + 1"}));
}

TEST_CASE("group commands") {
  auto li = payload(call({"group", "low-index", "--gens", "2", "--rels", "", "--index", "3"}));
  CHECK(li.at("subgroup_count") == 13);
  CHECK(li.at("conjugacy_class_count") == 7);
  CHECK(li.at("tables").size() == 13);
  auto tc = payload(call({"group", "todd-coxeter", "--gens", "a b", "--rels", "a^2, b^3, (a*b)^3"}));
  CHECK(tc.at("index") == 12);
  auto tp = payload(call({"group", "todd-coxeter", "--presentation", "gens: a ; rels: ; sub: a^3"}));
  CHECK(tp.at("index") == 3);
  CHECK(payload(call({"group", "hall", "--gens", "2", "--index", "4"})).at("subgroup_count") == "71");
  auto cp = payload(call({"classify", "--presentation", "gens: a b ; rels: a*b*a^-1*b^-1", "--mu", "2"}));
  CHECK(cp.at("bound") == 3);
  CHECK(cp.at("pi1_source") == "user-presentation");
}

TEST_CASE("exit codes") {
  CHECK(call({"degree", "--map", R"({"variables": ["x"], "targets": ["x"], "map": ["x"]})"}).code == 2);
  CHECK(call({"degree", "--map", "/nonexistent.json"}).code == 2);
  CHECK(call({"degree"}).code == 2);
  CHECK(call({}).code == 2);
  auto cap = call({"group", "todd-coxeter", "--gens", "2", "--max-cosets", "100"});
  CHECK(cap.code == 3);
  CHECK(cap.out.empty());
  CHECK_FALSE(cap.err.empty());
  CHECK(call({"group", "low-index", "--gens", "3", "--index", "6", "--node-budget", "10"}).code == 3);
  // Samples m = 0 (r = 1) and m = 1 (r = 2): no strict mode.
  const std::string fam = R"({"parameters": ["m"], "variables": ["x"], "targets": ["z"], "map": ["x^3 + m*x"]})";
  CHECK(call({"family", "classify", "--family", fam, "--samples", "0;1"}).code == 4);
  CHECK(call({"fiber", "--map", kXY, "--at", "0,0"}).code == 2);
}

TEST_CASE("reports are reproducible") {
  for (const auto& args : std::vector<std::vector<std::string>>{
           {"bifurcation", "--map", kXY},
           {"family", "partition", "--family", kFamily, "--random-samples", "6"},
           {"group", "low-index", "--gens", "2", "--index", "3"}}) {
    auto a = call(args), b = call(args);
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
  }
  auto s1 = call({"degree", "--map", kXY, "--seed", "7"});
  CHECK(Json::parse(s1.out).at("seed") == 7);
}

TEST_CASE("output file") {
  const std::string path = "test_cli_output.json";
  std::remove(path.c_str());
  auto r = call({"degree", "--map", kCubic, "--output", path});
  CHECK(r.code == 0);
  CHECK(r.out.empty());
  std::ifstream in(path);
  REQUIRE(in);
  CHECK(Json::parse(in).at("payload").at("mu") == 3);
  std::remove(path.c_str());
}
