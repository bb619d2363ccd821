#pragma once

#include <map>
#include <string>

#include "crf/field.hpp"

namespace crf {

// Built-in desk-scale fields. UNIFORM8 also carries its named events.
enum class FixtureId { Table1, Table2, Uniform8, Copy, Chain, Coins };

struct Fixture {
  FixtureId id;
  JointField field;
  std::map<std::string, Event> events;  // A, B, C1, C2 for UNIFORM8
};

FixtureId fixture_id(std::string_view name);  // throws UnknownFixture
std::string fixture_name(FixtureId id);

// `coins` is the site count used by the Coins fixture only.
Fixture builtin_fixture(FixtureId id, int coins = 3);
Fixture builtin_fixture(std::string_view name, int coins = 3);

}  // namespace crf
