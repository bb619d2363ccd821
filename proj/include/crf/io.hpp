#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "crf/field.hpp"
#include "crf/info_sets.hpp"
#include "crf/json_util.hpp"
#include "crf/miner.hpp"

namespace crf {

// CSV: header = site names plus a final `weight` column; each body row is one
// full assignment plus a weight token (decimal integer or p/q). Alphabets are
// inferred in order of first appearance.
JointField parse_field_csv(std::istream& in, const BuildOptions& opts = {});

// JSON: {sites: [{name, alphabet: [labels]}], rows: [{assignment, weight}]}.
JointField parse_field_json(std::istream& in, const BuildOptions& opts = {});

// Canonical field JSON (round-trips through parse_field_json bit-exactly).
Json field_json(const JointField& field);

// {scope: [names], entries: [{assignment, p}]}, entries in canonical order.
Json marginal_table_json(const JointField& field, const MarginalTable& table);

// Per-site analysis: positivity, Besag status, SI(i, i^c), MI, ES, neighbor.
Json analyze_report_json(const JointField& field,
                         const std::vector<std::string>& only_sites = {},
                         int lattice_guard = kDefaultLatticeGuard);

Json theorem_report_json(const JointField& field, const TheoremReport& report);

// {property, field, detail} per the witness interchange format.
Json witness_json(const Witness& w);

// Comma-separated NAME=LABEL list ("" allowed).
PointAssignment parse_point(const JointField& field, std::string_view text);

// Comma-separated NAME∈{L1,L2} constraints; ASCII "NAME in {L1,L2}" works too.
CoarseConstraint parse_coarse(const JointField& field, std::string_view text);

}  // namespace crf
