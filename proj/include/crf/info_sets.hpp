#pragma once

#include <map>
#include <optional>
#include <vector>

#include "crf/field.hpp"

namespace crf {

// Verdict on whether event C is uninformative for A given B.
struct UNVerdict {
  enum class Status { MemberZero, MemberEqual, Informative };
  Status status;
  std::optional<Rational> left;   // P(A | B ∩ C), nullopt when undefined
  std::optional<Rational> right;  // P(A | B)

  bool uninformative() const { return status != Status::Informative; }
};

enum class FamilyKind { SI, MI, ES, Reduction };

struct SiteSetFamily {
  FamilyKind kind = FamilyKind::SI;
  std::vector<SiteSet> member_sets;  // canonical order: size, then lex

  bool contains(SiteSet s) const;
  void sort_canonical();
};

struct PartitionCheck {
  bool holds = false;
  std::optional<Rational> common;  // the shared value c when holds
  std::vector<UNVerdict> per_cell;
};

struct SufficiencyResult {
  bool sufficient = false;
  // First violating point in canonical order: (x_target, scope code on I).
  std::optional<std::pair<int, std::uint64_t>> witness;
};

struct MiResult {
  bool minimal = false;
  std::optional<SiteSet> reducing;  // smallest (size, then lex) reducing set
};

struct EsResult {
  SiteSetFamily family;            // MI(i) ∩ SI(i, i^c)
  bool ambiguous = false;          // more than one element
  std::optional<SiteSet> neighbor; // the unique element when not ambiguous
};

struct BesagStatus {
  bool well_defined = false;
  std::vector<SiteSet> minimal_sets;  // inclusion-minimal reduction sets
  SiteSetFamily reduction_family;
};

// Per-site nonempty label subsets, site index -> allowed label indices.
struct CoarseConstraint {
  std::map<int, std::vector<int>> allowed;
};

// Exact-valued partial assignment, site index -> label index.
using PointAssignment = std::map<int, int>;

struct DependenceViolation {
  SiteSet dependence_set;
  int x_target;
  std::uint64_t scope_code;  // point of D_I where equality fails
};

struct DependenceReport {
  std::vector<SiteSet> dependence_sets;  // J ⊆ I the conditional factors through
  std::vector<DependenceViolation> violations;  // expected empty
};

UNVerdict is_uninformative(const JointField& field, const Event& a,
                           const Event& b, const Event& c);

PartitionCheck partition_constant_check(const JointField& field,
                                        const Event& a, const Event& b,
                                        const std::vector<Event>& partition);

SufficiencyResult is_sufficient(const JointField& field, int target,
                                SiteSet sub, SiteSet super);

SiteSetFamily si_family(const JointField& field, int target, SiteSet universe,
                        int lattice_guard = kDefaultLatticeGuard);

MiResult mi_membership(const JointField& field, int target, SiteSet set,
                       bool allow_self = false,
                       int lattice_guard = kDefaultLatticeGuard);

SiteSetFamily mi_family(const JointField& field, int target,
                        int lattice_guard = kDefaultLatticeGuard);

EsResult es_family(const JointField& field, int target,
                   int lattice_guard = kDefaultLatticeGuard);

BesagStatus reduction_family(const JointField& field, int target,
                             int lattice_guard = kDefaultLatticeGuard);

// P(X_target = · | X_J = point, X_h ∈ N_h for h in the constraint), exact;
// nullopt when the conditioning event has probability zero.
std::optional<std::vector<Rational>> coarse_conditional(
    const JointField& field, int target, const PointAssignment& point,
    const CoarseConstraint& constraint);

DependenceReport dependence_corollary_check(
    const JointField& field, int target, SiteSet universe,
    int lattice_guard = kDefaultLatticeGuard);

// Event of the conjunction {X_J = point} ∩ {X_h ∈ N_h ...}.
Event constraint_event(const JointField& field, const PointAssignment& point,
                       const CoarseConstraint& constraint);

}  // namespace crf
