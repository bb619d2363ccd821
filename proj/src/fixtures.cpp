#include "crf/fixtures.hpp"

#include <algorithm>

namespace crf {

namespace {

FieldSpec weighted_rows(std::vector<std::string> names,
                        std::vector<std::vector<std::string>> rows) {
  FieldSpec spec;
  spec.site_names = std::move(names);
  for (auto& r : rows) spec.rows.emplace_back(std::move(r), Rational(1));
  return spec;
}

}  // namespace

FixtureId fixture_id(std::string_view name) {
  std::string up(name);
  std::transform(up.begin(), up.end(), up.begin(), ::toupper);
  if (up == "TABLE1") return FixtureId::Table1;
  if (up == "TABLE2") return FixtureId::Table2;
  if (up == "UNIFORM8") return FixtureId::Uniform8;
  if (up == "COPY") return FixtureId::Copy;
  if (up == "CHAIN") return FixtureId::Chain;
  if (up == "COINS") return FixtureId::Coins;
  throw Error(Errc::UnknownFixture, std::string(name));
}

std::string fixture_name(FixtureId id) {
  switch (id) {
    case FixtureId::Table1: return "TABLE1";
    case FixtureId::Table2: return "TABLE2";
    case FixtureId::Uniform8: return "UNIFORM8";
    case FixtureId::Copy: return "COPY";
    case FixtureId::Chain: return "CHAIN";
    case FixtureId::Coins: return "COINS";
  }
  return "?";
}

Fixture builtin_fixture(FixtureId id, int coins) {
  Fixture fx;
  fx.id = id;
  switch (id) {
    case FixtureId::Table1: {
      fx.field = JointField::build(weighted_rows(
          {"X", "Y", "Z"},
          {{"1", "1", "1"}, {"1", "0", "0"}, {"0", "1", "0"}, {"0", "0", "0"}}));
      return fx;
    }
    case FixtureId::Table2: {
      fx.field = JointField::build(
          weighted_rows({"X", "Y"}, {{"1", "1"}, {"0", "1"}, {"0", "0"}}));
      return fx;
    }
    case FixtureId::Uniform8: {
      FieldSpec spec;
      spec.site_names = {"W"};
      for (int v = 1; v <= 8; ++v)
        spec.rows.emplace_back(std::vector<std::string>{std::to_string(v)},
                               Rational(1));
      fx.field = JointField::build(spec);
      auto pick = [&](std::initializer_list<int> vals) {
        std::vector<std::vector<std::string>> rows;
        for (int v : vals) rows.push_back({std::to_string(v)});
        return Event::from_assignments(fx.field, rows);
      };
      fx.events["A"] = pick({1, 2, 3, 4});
      fx.events["B"] = Event::whole(fx.field);
      fx.events["C1"] = pick({2, 4, 6, 8});
      fx.events["C2"] = pick({1, 3, 5, 8});
      return fx;
    }
    case FixtureId::Copy: {
      // X2 copies X1; X3 copies X1 with probability 3/4. Both {X1} and {X2}
      // are then sufficient for X3, which is the ill-definedness witness.
      FieldSpec spec;
      spec.site_names = {"X1", "X2", "X3"};
      spec.alphabets = {{"0", "1"}, {"0", "1"}, {"0", "1"}};
      spec.rows = {
          {{"0", "0", "0"}, Rational(3, 8)},
          {{"0", "0", "1"}, Rational(1, 8)},
          {{"1", "1", "1"}, Rational(3, 8)},
          {{"1", "1", "0"}, Rational(1, 8)},
      };
      fx.field = JointField::build(spec);
      return fx;
    }
    case FixtureId::Chain: {
      // Strictly positive flip chain: X1 fair, each link flips w.p. 1/4.
      FieldSpec spec;
      spec.site_names = {"X1", "X2", "X3"};
      spec.alphabets = {{"0", "1"}, {"0", "1"}, {"0", "1"}};
      for (int a = 0; a <= 1; ++a)
        for (int b = 0; b <= 1; ++b)
          for (int c = 0; c <= 1; ++c) {
            Rational w = Rational(1, 2) * Rational(a == b ? 3 : 1, 4) *
                         Rational(b == c ? 3 : 1, 4);
            spec.rows.push_back({{std::to_string(a), std::to_string(b),
                                  std::to_string(c)},
                                 w});
          }
      fx.field = JointField::build(spec);
      return fx;
    }
    case FixtureId::Coins: {
      if (coins < 1)
        throw Error(Errc::UnknownFixture, "COINS needs at least one site");
      FieldSpec spec;
      for (int i = 1; i <= coins; ++i) {
        spec.site_names.push_back("X" + std::to_string(i));
        spec.alphabets.push_back({"0", "1"});
      }
      for (std::uint64_t c = 0; c < (std::uint64_t(1) << coins); ++c) {
        std::vector<std::string> row(coins);
        for (int i = 0; i < coins; ++i)
          row[i] = ((c >> (coins - 1 - i)) & 1) ? "1" : "0";
        spec.rows.emplace_back(std::move(row), Rational(1));
      }
      fx.field = JointField::build(spec);
      return fx;
    }
  }
  throw Error(Errc::UnknownFixture, "bad fixture id");
}

Fixture builtin_fixture(std::string_view name, int coins) {
  return builtin_fixture(fixture_id(name), coins);
}

}  // namespace crf
