#include <doctest.h>

#include <sstream>

#include "crf/fixtures.hpp"
#include "crf/info_sets.hpp"
#include "crf/io.hpp"

using namespace crf;

namespace {

const char* kTable1Csv =
    "X,Y,Z,weight\n"
    "1,1,1,1\n"
    "1,0,0,1\n"
    "0,1,0,1\n"
    "0,0,0,1\n";

JointField from_csv(const char* text) {
  std::istringstream in(text);
  return parse_field_csv(in);
}

}  // namespace

TEST_CASE("CSV parse matches the TABLE1 fixture") {
  JointField f = from_csv(kTable1Csv);
  JointField fx = builtin_fixture(FixtureId::Table1).field;
  CHECK(f.site_names() == fx.site_names());
  CHECK(f.alphabets() == fx.alphabets());
  CHECK(f.masses() == fx.masses());
}

TEST_CASE("CSV accepts fractional weights and rejects junk") {
  JointField f = from_csv("A,weight\nx,1/3\ny,2/3\n");
  CHECK(f.mass(0) == Rational(1, 3));

  std::istringstream bad_header("A,B\nx,y\n");
  CHECK_THROWS_AS(parse_field_csv(bad_header), Error);
  std::istringstream bad_weight("A,weight\nx,oops\n");
  CHECK_THROWS_AS(parse_field_csv(bad_weight), Error);
  std::istringstream bad_arity("A,weight\nx,y,1\n");
  CHECK_THROWS_AS(parse_field_csv(bad_arity), Error);
}

TEST_CASE("rational parsing and rendering") {
  CHECK(parse_rational("3") == Rational(3));
  CHECK(parse_rational("6/8") == Rational(3, 4));
  CHECK_THROWS_AS(parse_rational("1/0"), Error);
  CHECK_THROWS_AS(parse_rational("1/-2"), Error);
  CHECK_THROWS_AS(parse_rational("a/b"), Error);
  CHECK(rational_text(Rational(3, 4)) == "3/4");
  CHECK(rational_text(Rational(2)) == "2");
  CHECK(rational_fraction(Rational(2)) == "2/1");
}

TEST_CASE("field JSON round-trips bit-exactly") {
  for (FixtureId id : {FixtureId::Table1, FixtureId::Table2, FixtureId::Copy,
                       FixtureId::Chain, FixtureId::Uniform8}) {
    JointField f = builtin_fixture(id).field;
    Json j = field_json(f);
    std::istringstream in(j.dump());
    JointField back = parse_field_json(in);
    CHECK(back.site_names() == f.site_names());
    CHECK(back.alphabets() == f.alphabets());
    CHECK(back.masses() == f.masses());
    CHECK(field_json(back).dump() == j.dump());
    // Analysis of the round-tripped field is byte-identical.
    CHECK(analyze_report_json(back).dump() == analyze_report_json(f).dump());
  }
}

TEST_CASE("marginal table JSON is canonical and complete") {
  JointField f = builtin_fixture(FixtureId::Table2).field;
  MarginalTable t = marginal(f, SiteSet::of({f.site_index("Y")}));
  Json j = marginal_table_json(f, t);
  CHECK(j["scope"] == Json::array({"Y"}));
  REQUIRE(j["entries"].size() == 2);
  CHECK(j["entries"][0]["assignment"] == Json::array({"1"}));
  CHECK(j["entries"][0]["p"] == "2/3");
  CHECK(j["entries"][1]["p"] == "1/3");
}

TEST_CASE("analyze report: Table 2 neighbors") {
  JointField f = builtin_fixture(FixtureId::Table2).field;
  Json rep = analyze_report_json(f);
  REQUIRE(rep.size() == 2);
  CHECK(rep[0]["site"] == "X");
  CHECK(rep[0]["positive"] == false);
  CHECK(rep[0]["neighbor"] == Json::array({"Y"}));
  CHECK(rep[1]["neighbor"] == Json::array({"X"}));
  CHECK(rep[0]["besag"]["status"] == "well-defined");
}

TEST_CASE("analyze report: COPY is ambiguous, COINS neighbor empty") {
  Json rep = analyze_report_json(builtin_fixture(FixtureId::Copy).field);
  CHECK(rep[2]["site"] == "X3");
  CHECK(rep[2]["neighbor"] == "ambiguous");
  CHECK(rep[2]["besag"]["status"] == "ambiguous");

  Json coins = analyze_report_json(builtin_fixture(FixtureId::Coins, 2).field);
  CHECK(coins[0]["neighbor"] == "empty");
}

TEST_CASE("analyze report honors the site filter") {
  JointField f = builtin_fixture(FixtureId::Table1).field;
  Json rep = analyze_report_json(f, {"Z"});
  REQUIRE(rep.size() == 1);
  CHECK(rep[0]["site"] == "Z");
  CHECK_THROWS_AS(analyze_report_json(f, {"Q"}), Error);
}

TEST_CASE("theorem report JSON") {
  JointField f = builtin_fixture(FixtureId::Table1).field;
  Json j = theorem_report_json(f, check_theorems(f));
  CHECK(j["all_pass"] == true);
  CHECK(j["checks"].size() == 7);
  for (const auto& entry : j["checks"]) CHECK(entry["pass"] == true);
}

TEST_CASE("witness JSON carries a reloadable field") {
  Fixture fx = builtin_fixture(FixtureId::Uniform8);
  Witness w{PropertyId::UnIntersectionClosure, 0, fx.field,
            Json{{"A", event_json(fx.field, fx.events.at("A"))}}};
  Json j = witness_json(w);
  CHECK(j["property"] == "UN_INTERSECTION_CLOSURE");
  std::istringstream in(j["field"].dump());
  JointField back = parse_field_json(in);
  CHECK(back.masses() == fx.field.masses());
}

TEST_CASE("parse_point and parse_coarse") {
  JointField f = builtin_fixture(FixtureId::Table1).field;
  PointAssignment p = parse_point(f, "Y=1, Z=0");
  CHECK(p.size() == 2);
  CHECK(p.at(f.site_index("Y")) == f.label_index(1, "1"));
  CHECK(parse_point(f, "").empty());
  CHECK_THROWS_AS(parse_point(f, "Y=1,Y=0"), Error);
  CHECK_THROWS_AS(parse_point(f, "Q=1"), Error);
  CHECK_THROWS_AS(parse_point(f, "Y~1"), Error);

  CoarseConstraint c = parse_coarse(f, "Y∈{0,1}, Z in {0}");
  CHECK(c.allowed.at(f.site_index("Y")).size() == 2);
  CHECK(c.allowed.at(f.site_index("Z")).size() == 1);
  CHECK_THROWS_AS(parse_coarse(f, "Y{0}, Y in {1}"), Error);
  CHECK_THROWS_AS(parse_coarse(f, "Y in 0,1"), Error);
}

TEST_CASE("query semantics through the library: Example 3 values") {
  JointField f = builtin_fixture(FixtureId::Table1).field;
  int x = f.site_index("X");
  auto dist = coarse_conditional(f, x, parse_point(f, "Y=1,Z=0"), {});
  REQUIRE(dist.has_value());
  CHECK((*dist)[f.label_index(x, "1")] == 0);
  CHECK((*dist)[f.label_index(x, "0")] == 1);

  auto blank = coarse_conditional(f, x, parse_point(f, ""), {});
  CHECK((*blank)[0] == Rational(1, 2));
  CHECK((*blank)[1] == Rational(1, 2));
}
