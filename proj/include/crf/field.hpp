#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "crf/error.hpp"
#include "crf/rational.hpp"
#include "crf/site_set.hpp"

namespace crf {

// 2^n-subset computations refuse to run past this many sites unless the
// caller raises the guard explicitly.
inline constexpr int kDefaultLatticeGuard = 14;

// Raw construction input: names, per-site alphabets, weighted rows.
// Alphabets may be empty, in which case they are inferred from the rows in
// order of first appearance.
struct FieldSpec {
  std::vector<std::string> site_names;
  std::vector<std::vector<std::string>> alphabets;
  std::vector<std::pair<std::vector<std::string>, Rational>> rows;
};

struct BuildOptions {
  // When a label has zero marginal probability: false -> construction error,
  // true -> the label is dropped from its alphabet.
  bool prune_unreachable = false;
};

// A finite categorical random field held as its full joint distribution,
// dense over the product of the alphabets. Immutable after construction.
class JointField {
 public:
  static JointField build(const FieldSpec& spec, const BuildOptions& opts = {});

  int site_count() const { return static_cast<int>(names_.size()); }
  const std::vector<std::string>& site_names() const { return names_; }
  const std::vector<std::vector<std::string>>& alphabets() const {
    return alphabets_;
  }
  int alphabet_size(int site) const {
    return static_cast<int>(alphabets_[site].size());
  }
  std::uint64_t cell_count() const { return mass_.size(); }
  const Rational& mass(std::uint64_t code) const { return mass_[code]; }
  const std::vector<Rational>& masses() const { return mass_; }

  // Full-assignment codec: mixed radix, site 0 most significant, digits in
  // alphabet order. Code order is the canonical assignment order.
  std::uint64_t encode(std::span<const int> labels) const;
  std::vector<int> decode(std::uint64_t code) const;
  int digit(std::uint64_t code, int site) const {
    return static_cast<int>(code / stride_[site] % alphabets_[site].size());
  }

  // Partial-assignment codec over a scope: member sites ascending, first
  // member most significant.
  std::uint64_t scope_cells(SiteSet scope) const;
  std::uint64_t restrict_code(std::uint64_t full_code, SiteSet scope) const;
  std::uint64_t scope_encode(SiteSet scope, std::span<const int> labels) const;
  std::vector<int> scope_decode(SiteSet scope, std::uint64_t code) const;
  // Restriction between nested scopes (sub must be a subset of scope).
  std::uint64_t scope_restrict(SiteSet scope, std::uint64_t code,
                               SiteSet sub) const;

  int site_index(std::string_view name) const;        // throws SiteOutOfRange
  int label_index(int site, std::string_view label) const;  // UnknownLabel

  void check_site(int site) const {
    if (site < 0 || site >= site_count())
      throw Error(Errc::SiteOutOfRange, "site index " + std::to_string(site));
  }
  void check_scope(SiteSet s) const {
    if (!s.subset_of(SiteSet::full(site_count())))
      throw Error(Errc::SiteOutOfRange, "site set exceeds field");
  }

  JointField() = default;  // empty placeholder; populate via build()

 private:
  std::vector<std::string> names_;
  std::vector<std::vector<std::string>> alphabets_;
  std::vector<std::uint64_t> stride_;
  std::vector<Rational> mass_;
};

// Exact marginal over a scope. `support` is D_scope: the positive cells, in
// canonical (ascending code) order.
struct MarginalTable {
  SiteSet scope;
  std::vector<Rational> prob;            // indexed by scope code
  std::vector<std::uint64_t> support;    // D_scope
};

// P(target | scope) on its exact domain M_target x D_scope.
struct ConditionalTable {
  int target = 0;
  SiteSet scope;
  std::vector<std::uint64_t> support;  // D_scope codes
  std::vector<char> defined;           // per scope code
  std::vector<Rational> prob;          // [scope_code * m_target + x_target]

  bool is_defined(std::uint64_t scope_code) const {
    return defined[scope_code] != 0;
  }
  const Rational& at(int x_target, std::uint64_t scope_code) const;
  int target_arity() const {
    return support.empty() ? 0 : static_cast<int>(prob.size() / defined.size());
  }
};

// A subset of the outcome space, as sorted unique full-assignment codes.
struct Event {
  std::vector<std::uint64_t> codes;

  static Event whole(const JointField& f);
  static Event from_codes(std::vector<std::uint64_t> codes);
  // Validating builder; each row is one full assignment by labels.
  static Event from_assignments(
      const JointField& f,
      const std::vector<std::vector<std::string>>& rows);
  // Cylinder {X_site = label}.
  static Event site_value(const JointField& f, int site, int label);

  Event intersect(const Event& other) const;
  Event unite(const Event& other) const;
  Event complement(const JointField& f) const;
  bool disjoint_with(const Event& other) const;
  bool contains(std::uint64_t code) const;
};

MarginalTable marginal(const JointField& field, SiteSet scope);

// All 2^n marginals by one sum-out-a-site-per-level sweep; result indexed by
// scope bits. Exactly equal to marginal() cell by cell.
std::vector<MarginalTable> marginal_lattice(
    const JointField& field, int lattice_guard = kDefaultLatticeGuard);

ConditionalTable conditional(const JointField& field, int target,
                             SiteSet scope);

Rational event_prob(const JointField& field, const Event& a);

// P(A|B); nullopt is the distinguished Undefined value (P(B) = 0).
std::optional<Rational> event_conditional(const JointField& field,
                                          const Event& a, const Event& b);

bool is_positive(const JointField& field);

}  // namespace crf
