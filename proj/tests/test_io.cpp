#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "lckw/commands.hpp"
#include "lckw/constructions.hpp"
#include "lckw/io.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace lckw;
using Q = Rational;

namespace {

const std::string kSource = LCKW_SOURCE_DIR;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const char* kMinimal = R"({
  "name": "m",
  "dim": 4,
  "brackets": [{"i": 2, "j": 3, "k": 4, "coeff": "1"}],
  "J": [["0","0","0","-1"],["0","0","-1","0"],["0","1","0","0"],["1","0","0","0"]],
  "g": [["1","0","0","0"],["0","1","0","0"],["0","0","1","0"],["0","0","0","1"]]
})";

std::string field_of_error(const std::string& text) {
  try {
    parse_structure_file(text);
  } catch (const ParseError& e) {
    return e.field();
  }
  return "";
}

std::string replace(std::string s, const std::string& from, const std::string& to) {
  const auto pos = s.find(from);
  REQUIRE(pos != std::string::npos);
  return s.replace(pos, from.size(), to);
}

}  // namespace

TEST_CASE("parse a minimal document") {
  const auto f = parse_structure_file(kMinimal);
  CHECK(f.name == "m");
  CHECK(f.dim == 4);
  CHECK(f.mode == ScalarMode::Rational);
  REQUIRE(f.brackets.size() == 1);
  CHECK(f.brackets[0].i == 2);
  CHECK(f.brackets[0].coeff == Q(1));
  const auto h = to_hermitian<Q>(f);
  const auto k = kodaira_structure<Q>(1);
  CHECK(h.algebra() == k.algebra());
  CHECK(h.J().matrix() == k.J().matrix());
  CHECK(h.g().m == k.g().m);
}

TEST_CASE("parse errors name the field") {
  CHECK(field_of_error("{\"name\": 1}") == "name");
  CHECK(field_of_error(replace(kMinimal, "\"dim\": 4", "\"dim\": -1")) == "dim");
  CHECK(field_of_error(replace(kMinimal, "\"i\": 2, \"j\": 3", "\"i\": 3, \"j\": 2")).rfind("brackets[0]", 0) == 0);
  CHECK(field_of_error(replace(kMinimal, "\"k\": 4", "\"k\": 9")).rfind("brackets[0]", 0) == 0);
  CHECK(field_of_error(replace(kMinimal, "\"coeff\": \"1\"", "\"coeff\": \"x/2\"")).rfind("brackets[0]", 0) == 0);
  CHECK(field_of_error(replace(kMinimal, "\"name\": \"m\",", "\"name\": \"m\", \"extra\": 1,")) == "extra");
  CHECK(field_of_error(replace(kMinimal, "[\"0\",\"0\",\"0\",\"1\"]]", "[\"0\",\"0\",\"1\"]]")).rfind("g", 0) == 0);
  CHECK(field_of_error("{\n  \"name\": \"m\",\n  \"dim\": 4,,\n}") == "line 3");
}

TEST_CASE("invariant violations raise ValidationError") {
  const auto broken = load_structure_file(kSource + "/fixtures/invalid/broken.json");
  try {
    to_hermitian<Q>(broken);
    FAIL("expected ValidationError");
  } catch (const ValidationError& e) {
    CHECK(e.invariant() == "almost-complex");
  }
  auto jac = parse_structure_file(kMinimal);
  jac.brackets.push_back({1, 2, 1, Q(1)});
  jac.brackets.push_back({1, 3, 1, Q(1)});
  CHECK_THROWS_AS(to_hermitian<Q>(jac), ValidationError);
  auto nonint = parse_structure_file(kMinimal);
  nonint.brackets = {{1, 2, 3, Q(1)}};
  try {
    to_hermitian<Q>(nonint);
    FAIL("expected ValidationError");
  } catch (const ValidationError& e) {
    CHECK(e.invariant() == "integrability");
  }
}

TEST_CASE("float mode parses decimals") {
  const auto f = parse_structure_file(replace(replace(kMinimal, "\"dim\": 4", "\"dim\": 4, \"mode\": \"float\""),
                                              "\"coeff\": \"1\"", "\"coeff\": 0.5"));
  CHECK(f.mode == ScalarMode::Float);
  CHECK(f.brackets[0].coeff == Q(1, 2));
  const auto h = to_hermitian<double>(f);
  CHECK(h.algebra().c(1, 2, 3) == 0.5);
}

TEST_CASE("fixtures round trip byte for byte") {
  for (const auto& entry : std::filesystem::directory_iterator(kSource + "/fixtures")) {
    if (entry.path().extension() != ".json") continue;
    CAPTURE(entry.path().string());
    const std::string text = read_file(entry.path().string());
    CHECK(serialize(parse_structure_file(text)) == text);
  }
}

TEST_CASE("structure_file_from reproduces the structure") {
  for (const auto& h : {kodaira_structure<Q>(2), ot_solvable_structure<Q>(2, {Q(1, 3), Q(0)}), ot_weight_deformation<Q>(Q(3, 2))}) {
    const auto f = structure_file_from(h, "x");
    const auto back = to_hermitian<Q>(parse_structure_file(serialize(f)));
    CHECK(back.algebra() == h.algebra());
    CHECK(back.J().matrix() == h.J().matrix());
    CHECK(back.g().m == h.g().m);
  }
  const auto s = heisenberg_sasaki<Q>();
  const auto sf = parse_structure_file(serialize(structure_file_from(s, "h3")));
  CHECK_FALSE(sf.J.has_value());
  const auto sb = to_sasaki<Q>(sf);
  CHECK(sb.alg == s.alg);
  CHECK(sb.Phi.m == s.Phi.m);
  CHECK(sb.xi == s.xi);
}

TEST_CASE("canonical serialization sorts brackets") {
  auto f = parse_structure_file(kMinimal);
  f.brackets = {{1, 2, 3, Q(1, 2)}, {2, 3, 4, Q(1)}};
  const std::string a = serialize(f);
  auto g = f;
  std::reverse(g.brackets.begin(), g.brackets.end());
  CHECK(serialize(g) == a);
  CHECK(a.back() == '\n');
}

TEST_CASE("dump_json keeps flat containers on one line") {
  Json j = Json::object();
  j["a"] = Json::array({1, 2, 3});
  j["b"] = {{"x", 1}};
  j["c"] = Json::array({Json::array({1}), Json::array({2})});
  CHECK(dump_json(j) == "{\n  \"a\": [1, 2, 3],\n  \"b\": {\"x\": 1},\n  \"c\": [\n    [1],\n    [2]\n  ]\n}\n");
}

TEST_CASE("analyze_structure report blocks") {
  const auto f = load_structure_file(kSource + "/fixtures/ot_s1.json");
  const auto a = analyze_structure(f, ScalarMode::Rational, kFloatTolerance);
  CHECK(a.failures.empty());
  CHECK_FALSE(a.alarm);
  CHECK(a.doc["classification"]["conformal_class"] == "StrictLcK");
  CHECK(a.doc["classification"]["einstein_fit"]["t"] == "1/2");
  CHECK(a.doc["corollary_t"]["value"] == "1/2");
  CHECK(a.doc["corollary_t"]["matches_fit"] == true);
  CHECK(a.doc["theorem_a"]["verdict"] == "consistent");

  const auto fl = analyze_structure(f, ScalarMode::Float, kFloatTolerance);
  CHECK(fl.failures.empty());
  CHECK(std::fabs(fl.doc["classification"]["einstein_fit"]["t"].get<double>() - 0.5) < 1e-9);
}
