#include <doctest.h>

#include "crf/fixtures.hpp"
#include "crf/info_sets.hpp"
#include "crf/miner.hpp"

using namespace crf;

TEST_CASE("fixture basics") {
  CHECK(!is_positive(builtin_fixture(FixtureId::Table2).field));
  JointField coins = builtin_fixture(FixtureId::Coins, 2).field;
  CHECK(is_positive(coins));
  for (std::uint64_t c = 0; c < 4; ++c) CHECK(coins.mass(c) == Rational(1, 4));

  JointField cp = builtin_fixture(FixtureId::Copy).field;
  Rational total(0);
  int support = 0;
  for (std::uint64_t c = 0; c < cp.cell_count(); ++c) {
    total += cp.mass(c);
    if (cp.mass(c) > 0) ++support;
  }
  CHECK(total == 1);
  CHECK(support == 4);

  CHECK_THROWS_AS(builtin_fixture("NOPE"), Error);
  CHECK(fixture_id("table1") == FixtureId::Table1);
}

TEST_CASE("enumerate_fields: fair coin only under (1 site, binary, {0,1})") {
  EnumerationBounds b{.max_sites = 1, .max_alphabet = 2, .weight_grid = {0, 1}};
  auto fields = enumerate_fields(b);
  REQUIRE(fields.size() == 1);
  CHECK(fields[0].cell_count() == 2);
  CHECK(fields[0].mass(0) == Rational(1, 2));
}

TEST_CASE("enumerate_fields: dedup by normalized masses") {
  // {0,1} and {0,2} grids normalize to the same single coin field.
  EnumerationBounds b{.max_sites = 1, .max_alphabet = 2,
                      .weight_grid = {0, 1, 2}};
  auto fields = enumerate_fields(b);
  // coin weight pairs from {1,2}: (1,1)~(2,2), (1,2), (2,1)
  CHECK(fields.size() == 3);
}

TEST_CASE("enumerate_fields: deterministic, including the random tail") {
  EnumerationBounds b{.max_sites = 2, .max_alphabet = 2,
                      .weight_grid = {0, 1}, .random_count = 10, .seed = 99};
  auto first = enumerate_fields(b);
  auto second = enumerate_fields(b);
  REQUIRE(first.size() == second.size());
  for (std::size_t i = 0; i < first.size(); ++i)
    CHECK(first[i].masses() == second[i].masses());
}

TEST_CASE("enumerate_fields: hard cap") {
  EnumerationBounds b{.max_sites = 4, .max_alphabet = 4,
                      .weight_grid = {0, 1, 2}, .hard_cap = 1000};
  CHECK_THROWS_WITH_AS(enumerate_fields(b), doctest::Contains("cap"), Error);
}

TEST_CASE("mine UN_INTERSECTION_CLOSURE finds re-validating witnesses") {
  MineResult res = mine(PropertyId::UnIntersectionClosure,
                        default_bounds(PropertyId::UnIntersectionClosure), 5);
  REQUIRE(!res.witnesses.empty());
  for (const auto& w : res.witnesses) CHECK(revalidate(w));
}

TEST_CASE("UNIFORM8 fixture validates as an intersection witness") {
  Fixture fx = builtin_fixture(FixtureId::Uniform8);
  Witness w;
  w.property = PropertyId::UnIntersectionClosure;
  w.field = fx.field;
  w.detail = Json{{"A", event_json(fx.field, fx.events.at("A"))},
                  {"B", event_json(fx.field, fx.events.at("B"))},
                  {"C1", event_json(fx.field, fx.events.at("C1"))},
                  {"C2", event_json(fx.field, fx.events.at("C2"))}};
  CHECK(revalidate(w));
}

TEST_CASE("mine MI_DOWNWARD_CLOSURE finds witnesses; TABLE1 validates") {
  MineResult res = mine(PropertyId::MiDownwardClosure,
                        default_bounds(PropertyId::MiDownwardClosure), 5);
  REQUIRE(!res.witnesses.empty());
  for (const auto& w : res.witnesses) CHECK(revalidate(w));

  JointField t1 = builtin_fixture(FixtureId::Table1).field;
  Witness w;
  w.property = PropertyId::MiDownwardClosure;
  w.field = t1;
  w.detail = Json{{"site", "X"},
                  {"set", Json::array({"Y", "Z"})},
                  {"subset", Json::array({"Y"})}};
  CHECK(revalidate(w));
}

TEST_CASE("mine TWO_AGENTS finds witnesses; TABLE1 validates") {
  MineResult res = mine(PropertyId::TwoAgents,
                        default_bounds(PropertyId::TwoAgents), 5);
  REQUIRE(!res.witnesses.empty());
  for (const auto& w : res.witnesses) CHECK(revalidate(w));

  JointField t1 = builtin_fixture(FixtureId::Table1).field;
  Witness w;
  w.property = PropertyId::TwoAgents;
  w.field = t1;
  Event a = Event::site_value(t1, 0, t1.label_index(0, "1"));
  Event z0 = Event::site_value(t1, 2, t1.label_index(2, "0"));
  w.detail = Json{{"A", event_json(t1, a)},
                  {"B", event_json(t1, z0)},
                  {"partition_site", "Y"}};
  CHECK(revalidate(w));
}

TEST_CASE("mine determinism: identical witness lists") {
  auto run = [] {
    return mine(PropertyId::MiDownwardClosure,
                default_bounds(PropertyId::MiDownwardClosure), 10);
  };
  MineResult a = run(), b = run();
  REQUIRE(a.witnesses.size() == b.witnesses.size());
  CHECK(a.fields_scanned == b.fields_scanned);
  for (std::size_t i = 0; i < a.witnesses.size(); ++i) {
    CHECK(a.witnesses[i].field_index == b.witnesses[i].field_index);
    CHECK(a.witnesses[i].detail == b.witnesses[i].detail);
  }
}

TEST_CASE("MustHold mining over a tiny exhaustive corpus is silent") {
  EnumerationBounds b{.max_sites = 2, .max_alphabet = 2,
                      .weight_grid = {0, 1, 2}};
  for (PropertyId id : must_hold_properties()) {
    MineResult res = mine(id, b);
    CHECK(res.witnesses.empty());
  }
}

TEST_CASE("check_theorems passes on the fixtures") {
  for (FixtureId id : {FixtureId::Table1, FixtureId::Table2, FixtureId::Copy,
                       FixtureId::Chain, FixtureId::Uniform8}) {
    TheoremReport rep = check_theorems(builtin_fixture(id).field);
    CHECK(rep.all_pass());
    CHECK(rep.entries.size() == must_hold_properties().size());
  }
  JointField coins = builtin_fixture(FixtureId::Coins, 3).field;
  CHECK(check_theorems(coins).all_pass());
  for (int i = 0; i < 3; ++i) {
    EsResult es = es_family(coins, i);
    REQUIRE(es.neighbor.has_value());
    CHECK(es.neighbor->empty());
  }
  JointField chain = builtin_fixture(FixtureId::Chain).field;
  CHECK(check_theorems(chain).all_pass());
  EsResult mid = es_family(chain, chain.site_index("X2"));
  CHECK(*mid.neighbor == SiteSet::of({chain.site_index("X1"),
                                      chain.site_index("X3")}));
}

TEST_CASE("check_theorems respects the lattice guard") {
  JointField f = builtin_fixture(FixtureId::Chain).field;
  CHECK_THROWS_AS(check_theorems(f, 2), Error);
}

TEST_CASE("property names round-trip") {
  for (PropertyId id : all_properties())
    CHECK(property_id(property_name(id)) == id);
  CHECK_THROWS_AS(property_id("NOT_A_PROPERTY"), Error);
}

TEST_CASE("UN union closure holds on seeded random fields") {
  EnumerationBounds b{.max_sites = 2, .max_alphabet = 3,
                      .weight_grid = {0, 1, 3}, .random_count = 40,
                      .seed = 4242};
  std::size_t scanned = enumerate_fields(b, [&](std::size_t, const JointField& f) {
    REQUIRE(eval_property(PropertyId::UnUnionClosure, f).empty());
    return true;
  });
  CHECK(scanned > 0);
}
