#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "crf/field.hpp"
#include "crf/json_util.hpp"

namespace crf {

enum class PropertyId {
  UnUnionClosure,
  UnIntersectionClosure,
  PartitionConstant,
  SiMonotoneA,
  SiMonotoneB,
  PropositionCoarse,
  CorollaryDependence,
  PositivityWelldef,
  MiDownwardClosure,
  TwoAgents,
};

enum class Expectation { MustHold, ExpectViolation };

Expectation expectation(PropertyId id);
std::string property_name(PropertyId id);
PropertyId property_id(std::string_view name);  // throws ParseError
std::vector<PropertyId> all_properties();
std::vector<PropertyId> must_hold_properties();

struct EnumerationBounds {
  int max_sites = 3;
  int max_alphabet = 2;
  std::vector<long> weight_grid = {0, 1};
  int random_count = 0;
  std::uint64_t seed = 0;
  // Refuse exhaustive streams whose projected grid count exceeds this.
  std::uint64_t hard_cap = 5'000'000;
};

// Deterministic stream: exhaustive part (deduplicated by normalized mass
// map) first, then `random_count` seeded pseudo-random fields. The visitor
// returns false to stop early. Returns the number of fields visited.
std::size_t enumerate_fields(
    const EnumerationBounds& bounds,
    const std::function<bool(std::size_t, const JointField&)>& visit);

std::vector<JointField> enumerate_fields(const EnumerationBounds& bounds);

struct RandomFieldOptions {
  int max_sites = 3;
  int max_alphabet = 2;
  long max_weight = 8;
  bool strictly_positive = false;
};

JointField random_field(std::mt19937_64& rng, const RandomFieldOptions& opts);

struct Witness {
  PropertyId property;
  std::size_t field_index = 0;
  JointField field;
  Json detail;
};

struct MineResult {
  std::vector<Witness> witnesses;
  std::size_t fields_scanned = 0;
};

// For ExpectViolation properties the witnesses demonstrate the refutation;
// for MustHold properties any witness is a violation of the theorem.
MineResult mine(PropertyId id, const EnumerationBounds& bounds,
                std::size_t witness_cap = 25);

// Bounds under which each refutable property is known to surface witnesses.
EnumerationBounds default_bounds(PropertyId id);

// Field-level evaluation: violation/witness details found on this field.
std::vector<Json> eval_property(PropertyId id, const JointField& field,
                                std::size_t cap = 25);

// Re-checks a concrete witness from scratch.
bool revalidate(const Witness& w);

struct TheoremEntry {
  PropertyId property;
  bool pass = false;
  std::vector<Json> witnesses;
};

struct TheoremReport {
  std::vector<TheoremEntry> entries;
  bool all_pass() const;
};

// Runs every MustHold property exhaustively over the field's own lattice.
TheoremReport check_theorems(const JointField& field,
                             int lattice_guard = kDefaultLatticeGuard);

}  // namespace crf
