#include "crf/info_sets.hpp"

#include <algorithm>

namespace crf {

bool SiteSetFamily::contains(SiteSet s) const {
  return std::find(member_sets.begin(), member_sets.end(), s) !=
         member_sets.end();
}

void SiteSetFamily::sort_canonical() {
  std::sort(member_sets.begin(), member_sets.end(), canonical_less);
  member_sets.erase(std::unique(member_sets.begin(), member_sets.end()),
                    member_sets.end());
}

namespace {

void check_guard(int width, int guard) {
  if (width > guard)
    throw Error(Errc::InstanceTooLarge,
                "subset lattice over " + std::to_string(width) +
                    " sites exceeds guard " + std::to_string(guard));
}

std::vector<SiteSet> inclusion_minimal(const std::vector<SiteSet>& sets) {
  std::vector<SiteSet> out;
  for (SiteSet s : sets) {
    bool minimal = true;
    for (SiteSet t : sets)
      if (t != s && t.subset_of(s)) {
        minimal = false;
        break;
      }
    if (minimal) out.push_back(s);
  }
  std::sort(out.begin(), out.end(), canonical_less);
  return out;
}

}  // namespace

UNVerdict is_uninformative(const JointField& field, const Event& a,
                           const Event& b, const Event& c) {
  auto right = event_conditional(field, a, b);
  if (!right)
    throw Error(Errc::ConditioningEventNull, "P(B) = 0, P(A|B) undefined");
  Event bc = b.intersect(c);
  auto left = event_conditional(field, a, bc);
  UNVerdict v;
  v.left = left;
  v.right = right;
  if (!left)
    v.status = UNVerdict::Status::MemberZero;
  else if (*left == *right)
    v.status = UNVerdict::Status::MemberEqual;
  else
    v.status = UNVerdict::Status::Informative;
  return v;
}

PartitionCheck partition_constant_check(const JointField& field,
                                        const Event& a, const Event& b,
                                        const std::vector<Event>& partition) {
  std::size_t covered = 0;
  for (std::size_t i = 0; i < partition.size(); ++i) {
    covered += partition[i].codes.size();
    for (std::size_t j = i + 1; j < partition.size(); ++j)
      if (!partition[i].disjoint_with(partition[j]))
        throw Error(Errc::NotAPartition,
                    "cells " + std::to_string(i) + " and " + std::to_string(j) +
                        " overlap");
  }
  if (covered != field.cell_count())
    throw Error(Errc::NotAPartition, "cells do not cover the outcome space");

  auto pab = event_conditional(field, a, b);
  if (!pab)
    throw Error(Errc::ConditioningEventNull, "P(B) = 0, P(A|B) undefined");

  PartitionCheck out;
  std::optional<Rational> common;
  bool consistent = true;
  for (const Event& cell : partition) {
    UNVerdict v = is_uninformative(field, a, b, cell);
    if (v.status != UNVerdict::Status::MemberZero) {
      if (!common)
        common = v.left;
      else if (*common != *v.left)
        consistent = false;
    }
    out.per_cell.push_back(std::move(v));
  }
  out.holds = consistent;
  if (consistent) out.common = common ? common : pab;  // vacuous case
  return out;
}

SufficiencyResult is_sufficient(const JointField& field, int target,
                                SiteSet sub, SiteSet super) {
  field.check_site(target);
  field.check_scope(super);
  if (!sub.subset_of(super))
    throw Error(Errc::NotASubset, "J is not a subset of I");

  ConditionalTable big = conditional(field, target, super);
  ConditionalTable small = conditional(field, target, sub);
  const int m = field.alphabet_size(target);
  for (std::uint64_t xs : big.support) {
    std::uint64_t xj = field.scope_restrict(super, xs, sub);
    for (int x = 0; x < m; ++x)
      if (big.at(x, xs) != small.at(x, xj))
        return {false, std::make_pair(x, xs)};
  }
  return {true, std::nullopt};
}

SiteSetFamily si_family(const JointField& field, int target, SiteSet universe,
                        int lattice_guard) {
  field.check_site(target);
  field.check_scope(universe);
  check_guard(universe.size(), lattice_guard);

  SiteSetFamily fam;
  fam.kind = FamilyKind::SI;
  ConditionalTable big = conditional(field, target, universe);
  const int m = field.alphabet_size(target);
  for_each_subset(universe, [&](SiteSet sub) {
    ConditionalTable small = conditional(field, target, sub);
    for (std::uint64_t xs : big.support) {
      std::uint64_t xj = field.scope_restrict(universe, xs, sub);
      for (int x = 0; x < m; ++x)
        if (big.at(x, xs) != small.at(x, xj)) return;
    }
    fam.member_sets.push_back(sub);
  });
  fam.sort_canonical();
  return fam;
}

MiResult mi_membership(const JointField& field, int target, SiteSet set,
                       bool allow_self, int lattice_guard) {
  field.check_site(target);
  field.check_scope(set);
  if (!allow_self && set.contains(target))
    throw Error(Errc::SiteOutOfRange,
                "set contains the target site (pass allow_self to permit)");
  check_guard(set.size(), lattice_guard);

  std::vector<SiteSet> reducing;
  for_each_subset(set, [&](SiteSet sub) {
    if (sub == set) return;
    if (is_sufficient(field, target, sub, set).sufficient)
      reducing.push_back(sub);
  });
  if (reducing.empty()) return {true, std::nullopt};
  return {false, *std::min_element(reducing.begin(), reducing.end(),
                                   canonical_less)};
}

SiteSetFamily mi_family(const JointField& field, int target,
                        int lattice_guard) {
  field.check_site(target);
  SiteSet rest = SiteSet::full(field.site_count()).without(target);
  check_guard(rest.size(), lattice_guard);

  SiteSetFamily fam;
  fam.kind = FamilyKind::MI;
  for_each_subset(rest, [&](SiteSet set) {
    if (mi_membership(field, target, set, false, lattice_guard).minimal)
      fam.member_sets.push_back(set);
  });
  fam.sort_canonical();
  return fam;
}

EsResult es_family(const JointField& field, int target, int lattice_guard) {
  SiteSet rest = SiteSet::full(field.site_count()).without(target);
  SiteSetFamily si = si_family(field, target, rest, lattice_guard);
  EsResult out;
  out.family.kind = FamilyKind::ES;
  for (SiteSet s : si.member_sets)
    if (mi_membership(field, target, s, false, lattice_guard).minimal)
      out.family.member_sets.push_back(s);
  out.family.sort_canonical();
  if (out.family.member_sets.size() == 1)
    out.neighbor = out.family.member_sets.front();
  else
    out.ambiguous = out.family.member_sets.size() > 1;
  return out;
}

BesagStatus reduction_family(const JointField& field, int target,
                             int lattice_guard) {
  field.check_site(target);
  SiteSet rest = SiteSet::full(field.site_count()).without(target);
  check_guard(rest.size(), lattice_guard);

  ConditionalTable full = conditional(field, target, rest);
  const int m = field.alphabet_size(target);

  BesagStatus out;
  out.reduction_family.kind = FamilyKind::Reduction;
  for_each_subset(rest, [&](SiteSet sub) {
    // P(target | rest) must take one value per restriction-to-sub class.
    std::map<std::uint64_t, std::uint64_t> representative;
    for (std::uint64_t xs : full.support) {
      std::uint64_t key = field.scope_restrict(rest, xs, sub);
      auto [it, fresh] = representative.emplace(key, xs);
      if (fresh) continue;
      for (int x = 0; x < m; ++x)
        if (full.at(x, xs) != full.at(x, it->second)) return;
    }
    out.reduction_family.member_sets.push_back(sub);
  });
  out.reduction_family.sort_canonical();
  out.minimal_sets = inclusion_minimal(out.reduction_family.member_sets);
  out.well_defined = out.minimal_sets.size() == 1;
  return out;
}

Event constraint_event(const JointField& field, const PointAssignment& point,
                       const CoarseConstraint& constraint) {
  std::vector<std::uint64_t> codes;
  for (std::uint64_t c = 0; c < field.cell_count(); ++c) {
    bool ok = true;
    for (auto [site, label] : point)
      if (field.digit(c, site) != label) {
        ok = false;
        break;
      }
    if (!ok) continue;
    for (const auto& [site, labels] : constraint.allowed) {
      int d = field.digit(c, site);
      if (std::find(labels.begin(), labels.end(), d) == labels.end()) {
        ok = false;
        break;
      }
    }
    if (ok) codes.push_back(c);
  }
  return Event{std::move(codes)};
}

std::optional<std::vector<Rational>> coarse_conditional(
    const JointField& field, int target, const PointAssignment& point,
    const CoarseConstraint& constraint) {
  field.check_site(target);
  for (auto [site, label] : point) {
    field.check_site(site);
    if (constraint.allowed.count(site))
      throw Error(Errc::OverlappingScopes,
                  "site " + field.site_names()[site] +
                      " appears both exactly-valued and coarse");
  }
  for (const auto& [site, labels] : constraint.allowed) {
    field.check_site(site);
    if (labels.empty())
      throw Error(Errc::EmptyConstraint,
                  "empty label set for site " + field.site_names()[site]);
  }

  Event cond = constraint_event(field, point, constraint);
  Rational pb = event_prob(field, cond);
  if (pb == 0) return std::nullopt;

  const int m = field.alphabet_size(target);
  std::vector<Rational> dist(m, Rational(0));
  for (std::uint64_t c : cond.codes) dist[field.digit(c, target)] += field.mass(c);
  for (auto& p : dist) p /= pb;
  return dist;
}

DependenceReport dependence_corollary_check(const JointField& field,
                                            int target, SiteSet universe,
                                            int lattice_guard) {
  field.check_site(target);
  field.check_scope(universe);
  check_guard(universe.size(), lattice_guard);

  ConditionalTable big = conditional(field, target, universe);
  const int m = field.alphabet_size(target);

  DependenceReport report;
  for_each_subset(universe, [&](SiteSet sub) {
    // Functional dependence: one conditional distribution per sub-class of D_I.
    std::map<std::uint64_t, std::uint64_t> representative;
    for (std::uint64_t xs : big.support) {
      std::uint64_t key = field.scope_restrict(universe, xs, sub);
      auto [it, fresh] = representative.emplace(key, xs);
      if (fresh) continue;
      for (int x = 0; x < m; ++x)
        if (big.at(x, xs) != big.at(x, it->second)) return;
    }
    report.dependence_sets.push_back(sub);
    // The corollary's claim: dependence on sub alone forces pointwise
    // agreement with P(target | sub).
    ConditionalTable small = conditional(field, target, sub);
    for (std::uint64_t xs : big.support) {
      std::uint64_t xj = field.scope_restrict(universe, xs, sub);
      for (int x = 0; x < m; ++x)
        if (big.at(x, xs) != small.at(x, xj))
          report.violations.push_back({sub, x, xs});
    }
  });
  std::sort(report.dependence_sets.begin(), report.dependence_sets.end(),
            canonical_less);
  return report;
}

}  // namespace crf
