#include "crf/miner.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

#include "crf/info_sets.hpp"
#include "crf/rational.hpp"

namespace crf {

Expectation expectation(PropertyId id) {
  switch (id) {
    case PropertyId::UnIntersectionClosure:
    case PropertyId::MiDownwardClosure:
    case PropertyId::TwoAgents:
      return Expectation::ExpectViolation;
    default:
      return Expectation::MustHold;
  }
}

std::string property_name(PropertyId id) {
  switch (id) {
    case PropertyId::UnUnionClosure: return "UN_UNION_CLOSURE";
    case PropertyId::UnIntersectionClosure: return "UN_INTERSECTION_CLOSURE";
    case PropertyId::PartitionConstant: return "PARTITION_CONSTANT";
    case PropertyId::SiMonotoneA: return "SI_MONOTONE_A";
    case PropertyId::SiMonotoneB: return "SI_MONOTONE_B";
    case PropertyId::PropositionCoarse: return "PROPOSITION_COARSE";
    case PropertyId::CorollaryDependence: return "COROLLARY_DEPENDENCE";
    case PropertyId::PositivityWelldef: return "POSITIVITY_WELLDEF";
    case PropertyId::MiDownwardClosure: return "MI_DOWNWARD_CLOSURE";
    case PropertyId::TwoAgents: return "TWO_AGENTS";
  }
  return "?";
}

std::vector<PropertyId> all_properties() {
  return {PropertyId::UnUnionClosure,      PropertyId::UnIntersectionClosure,
          PropertyId::PartitionConstant,   PropertyId::SiMonotoneA,
          PropertyId::SiMonotoneB,         PropertyId::PropositionCoarse,
          PropertyId::CorollaryDependence, PropertyId::PositivityWelldef,
          PropertyId::MiDownwardClosure,   PropertyId::TwoAgents};
}

std::vector<PropertyId> must_hold_properties() {
  std::vector<PropertyId> out;
  for (PropertyId id : all_properties())
    if (expectation(id) == Expectation::MustHold) out.push_back(id);
  return out;
}

PropertyId property_id(std::string_view name) {
  for (PropertyId id : all_properties())
    if (property_name(id) == name) return id;
  throw Error(Errc::ParseError, "unknown property '" + std::string(name) + "'");
}

namespace {

// ---------------------------------------------------------------------------
// Per-field evaluation context: one marginal/conditional cache shared by all
// checks over the same field.

struct Ctx {
  const JointField& f;
  std::map<std::uint32_t, MarginalTable> margs;
  std::map<std::pair<int, std::uint32_t>, ConditionalTable> conds;

  explicit Ctx(const JointField& field) : f(field) {}

  const MarginalTable& marg(SiteSet s) {
    auto it = margs.find(s.bits);
    if (it == margs.end())
      it = margs.emplace(s.bits, marginal(f, s)).first;
    return it->second;
  }
  const ConditionalTable& cond(int i, SiteSet s) {
    auto key = std::make_pair(i, s.bits);
    auto it = conds.find(key);
    if (it == conds.end())
      it = conds.emplace(key, conditional(f, i, s)).first;
    return it->second;
  }
  // Pointwise equality of P(i|super) and P(i|sub) on E_{i;super}.
  bool sufficient(int i, SiteSet sub, SiteSet super) {
    const ConditionalTable& big = cond(i, super);
    const ConditionalTable& small = cond(i, sub);
    const int m = f.alphabet_size(i);
    for (std::uint64_t xs : big.support) {
      std::uint64_t xj = f.scope_restrict(super, xs, sub);
      for (int x = 0; x < m; ++x)
        if (big.at(x, xs) != small.at(x, xj)) return false;
    }
    return true;
  }
};

struct NamedEvent {
  Json desc;  // site/value tag for reports, not used in checks
  Event event;
};

std::vector<std::tuple<int, int, Event>> cylinders(const JointField& f) {
  std::vector<std::tuple<int, int, Event>> out;
  for (int i = 0; i < f.site_count(); ++i)
    for (int l = 0; l < f.alphabet_size(i); ++l)
      out.emplace_back(i, l, Event::site_value(f, i, l));
  return out;
}

// Partitions of the outcome space used by the property pools: one per site
// (cells = the site's values) plus, on small fields, the singleton partition.
std::vector<std::vector<Event>> standard_partitions(const JointField& f) {
  std::vector<std::vector<Event>> out;
  for (int i = 0; i < f.site_count(); ++i) {
    std::vector<Event> cells;
    for (int l = 0; l < f.alphabet_size(i); ++l)
      cells.push_back(Event::site_value(f, i, l));
    out.push_back(std::move(cells));
  }
  if (f.cell_count() <= 8) {
    std::vector<Event> singletons;
    for (std::uint64_t c = 0; c < f.cell_count(); ++c)
      singletons.push_back(Event{{c}});
    out.push_back(std::move(singletons));
  }
  return out;
}

std::vector<Event> conditioning_pool(const JointField& f) {
  std::vector<Event> out;
  out.push_back(Event::whole(f));
  for (auto& [i, l, e] : cylinders(f))
    if (event_prob(f, e) > 0) out.push_back(e);
  return out;
}

// --- MustHold evaluators ----------------------------------------------------

std::vector<Json> eval_un_union(const JointField& f, std::size_t cap) {
  std::vector<Json> out;
  auto cyl = cylinders(f);
  auto bs = conditioning_pool(f);
  auto partitions = standard_partitions(f);

  for (auto& [ai, al, a] : cyl) {
    for (const Event& b : bs) {
      Rational pb = event_prob(f, b);
      Rational pab = event_prob(f, a.intersect(b)) / pb;
      for (const auto& cells : partitions) {
        // Per cell: numerator P(A∩B∩C) and denominator P(B∩C); union
        // verdicts are then sums of these.
        std::vector<Rational> num, den;
        std::vector<std::size_t> uninf;
        for (std::size_t k = 0; k < cells.size(); ++k) {
          Event bc = b.intersect(cells[k]);
          den.push_back(event_prob(f, bc));
          num.push_back(event_prob(f, a.intersect(bc)));
          if (den[k] == 0 || num[k] == pab * den[k]) uninf.push_back(k);
        }
        if (uninf.size() < 2) continue;

        auto check_family = [&](const std::vector<std::size_t>& picked) {
          Rational n(0), d(0);
          for (std::size_t k : picked) {
            n += num[k];
            d += den[k];
          }
          if (d > 0 && n != pab * d) {
            Json cj = Json::array();
            for (std::size_t k : picked) cj.push_back(event_json(f, cells[k]));
            out.push_back(Json{{"A", event_json(f, a)},
                               {"B", event_json(f, b)},
                               {"cells", cj},
                               {"p_ab", rational_fraction(pab)},
                               {"p_union", rational_fraction(n / d)}});
          }
        };

        if (uninf.size() <= 5) {
          // Every subfamily of size >= 2.
          for (std::uint32_t s = 1; s < (1u << uninf.size()); ++s) {
            if (std::popcount(s) < 2) continue;
            std::vector<std::size_t> picked;
            for (std::size_t k = 0; k < uninf.size(); ++k)
              if ((s >> k) & 1) picked.push_back(uninf[k]);
            check_family(picked);
            if (out.size() >= cap) return out;
          }
        } else {
          for (std::size_t x = 0; x < uninf.size(); ++x)
            for (std::size_t y = x + 1; y < uninf.size(); ++y) {
              check_family({uninf[x], uninf[y]});
              if (out.size() >= cap) return out;
            }
          check_family(uninf);
        }
        if (out.size() >= cap) return out;
      }
    }
  }
  return out;
}

std::vector<Json> eval_partition_constant(const JointField& f,
                                          std::size_t cap) {
  std::vector<Json> out;
  auto cyl = cylinders(f);
  auto bs = conditioning_pool(f);
  auto partitions = standard_partitions(f);
  for (auto& [ai, al, a] : cyl) {
    for (const Event& b : bs) {
      auto pab = event_conditional(f, a, b);
      for (const auto& cells : partitions) {
        PartitionCheck pc = partition_constant_check(f, a, b, cells);
        if (pc.holds && *pc.common != *pab) {
          Json cj = Json::array();
          for (const Event& c : cells) cj.push_back(event_json(f, c));
          out.push_back(Json{{"A", event_json(f, a)},
                             {"B", event_json(f, b)},
                             {"partition", cj},
                             {"c", rational_fraction(*pc.common)},
                             {"p_ab", rational_fraction(*pab)}});
          if (out.size() >= cap) return out;
        }
      }
    }
  }
  return out;
}

std::vector<Json> eval_si_monotone(const JointField& f, bool variant_a,
                                   std::size_t cap) {
  std::vector<Json> out;
  Ctx ctx(f);
  for (int i = 0; i < f.site_count(); ++i) {
    SiteSet rest = SiteSet::full(f.site_count()).without(i);
    for_each_subset(rest, [&](SiteSet big) {
      if (out.size() >= cap) return;
      for_each_subset(big, [&](SiteSet mid) {
        if (out.size() >= cap) return;
        for_each_subset(mid, [&](SiteSet small) {
          if (out.size() >= cap) return;
          if (!ctx.sufficient(i, small, big)) return;
          bool ok = variant_a ? ctx.sufficient(i, small, mid)
                              : ctx.sufficient(i, mid, big);
          if (!ok)
            out.push_back(Json{{"site", f.site_names()[i]},
                               {"J", siteset_json(f, small)},
                               {"H", siteset_json(f, mid)},
                               {"I", siteset_json(f, big)}});
        });
      });
    });
  }
  return out;
}

std::vector<Json> eval_proposition_coarse(const JointField& f,
                                          std::size_t cap) {
  std::vector<Json> out;
  Ctx ctx(f);
  for (int i = 0; i < f.site_count(); ++i) {
    SiteSet rest = SiteSet::full(f.site_count()).without(i);
    for_each_subset(rest, [&](SiteSet j_set) {
      if (out.size() >= cap) return;
      for (int h : rest.minus(j_set).members()) {
        if (!ctx.sufficient(i, j_set, j_set.with(h))) continue;
        const ConditionalTable& base = ctx.cond(i, j_set);
        const int m = f.alphabet_size(i);
        const int mh = f.alphabet_size(h);
        for (std::uint64_t xj : base.support) {
          PointAssignment point;
          auto sites = j_set.members();
          auto digits = f.scope_decode(j_set, xj);
          for (std::size_t k = 0; k < sites.size(); ++k)
            point[sites[k]] = digits[k];
          for (std::uint32_t nmask = 1; nmask < (1u << mh); ++nmask) {
            CoarseConstraint cc;
            for (int l = 0; l < mh; ++l)
              if ((nmask >> l) & 1) cc.allowed[h].push_back(l);
            auto coarse = coarse_conditional(f, i, point, cc);
            if (!coarse) continue;  // undefined: nothing claimed
            for (int x = 0; x < m; ++x) {
              if ((*coarse)[x] == base.at(x, xj)) continue;
              Json nj = Json::array();
              for (int l : cc.allowed[h]) nj.push_back(f.alphabets()[h][l]);
              out.push_back(
                  Json{{"site", f.site_names()[i]},
                       {"J", siteset_json(f, j_set)},
                       {"h", f.site_names()[h]},
                       {"point", scope_assignment_json(f, j_set, xj)},
                       {"N", nj},
                       {"x", f.alphabets()[i][x]},
                       {"coarse", rational_fraction((*coarse)[x])},
                       {"conditional", rational_fraction(base.at(x, xj))}});
              if (out.size() >= cap) return;
            }
          }
        }
      }
    });
  }
  return out;
}

std::vector<Json> eval_corollary(const JointField& f, std::size_t cap) {
  std::vector<Json> out;
  for (int i = 0; i < f.site_count(); ++i) {
    SiteSet rest = SiteSet::full(f.site_count()).without(i);
    for_each_subset(rest, [&](SiteSet universe) {
      if (out.size() >= cap) return;
      DependenceReport rep = dependence_corollary_check(f, i, universe);
      for (const auto& v : rep.violations) {
        out.push_back(Json{
            {"site", f.site_names()[i]},
            {"I", siteset_json(f, universe)},
            {"J", siteset_json(f, v.dependence_set)},
            {"x", f.alphabets()[i][v.x_target]},
            {"point", scope_assignment_json(f, universe, v.scope_code)}});
        if (out.size() >= cap) return;
      }
    });
    if (out.size() >= cap) return out;
    // Derived equivalence: the reduction family over i^c is exactly
    // SI(i, i^c).
    BesagStatus bs = reduction_family(f, i);
    SiteSetFamily si = si_family(f, i, rest);
    if (bs.reduction_family.member_sets != si.member_sets) {
      Json rj = Json::array(), sj = Json::array();
      for (SiteSet s : bs.reduction_family.member_sets)
        rj.push_back(siteset_json(f, s));
      for (SiteSet s : si.member_sets) sj.push_back(siteset_json(f, s));
      out.push_back(Json{{"site", f.site_names()[i]},
                         {"reduction_family", rj},
                         {"si_complement", sj}});
      if (out.size() >= cap) return out;
    }
  }
  return out;
}

std::vector<Json> eval_positivity(const JointField& f, std::size_t cap) {
  std::vector<Json> out;
  if (!is_positive(f)) return out;
  for (int i = 0; i < f.site_count(); ++i) {
    BesagStatus bs = reduction_family(f, i);
    EsResult es = es_family(f, i);
    bool ok = bs.well_defined && es.neighbor && !es.ambiguous &&
              bs.minimal_sets.size() == 1 &&
              bs.minimal_sets.front() == *es.neighbor;
    if (!ok) {
      Json mj = Json::array(), ej = Json::array();
      for (SiteSet s : bs.minimal_sets) mj.push_back(siteset_json(f, s));
      for (SiteSet s : es.family.member_sets) ej.push_back(siteset_json(f, s));
      out.push_back(Json{{"site", f.site_names()[i]},
                         {"minimal_reduction_sets", mj},
                         {"es", ej}});
      if (out.size() >= cap) return out;
    }
  }
  return out;
}

// --- ExpectViolation evaluators ---------------------------------------------

std::vector<Json> eval_un_intersection(const JointField& f, std::size_t cap) {
  std::vector<Json> out;
  const std::uint64_t cells = f.cell_count();
  Event omega = Event::whole(f);

  if (cells <= 8) {
    // Small outcome space: sweep every event pair via a probability table
    // indexed by outcome-set bitmask.
    const std::uint32_t m = 1u << cells;
    std::vector<Rational> pe(m, Rational(0));
    for (std::uint32_t mask = 1; mask < m; ++mask) {
      std::uint32_t low = mask & (mask - 1);
      pe[mask] = pe[low] + f.mass(std::countr_zero(mask));
    }
    auto to_event = [&](std::uint32_t mask) {
      std::vector<std::uint64_t> codes;
      for (std::uint32_t b = mask; b; b &= b - 1)
        codes.push_back(std::countr_zero(b));
      return Event{std::move(codes)};
    };
    for (std::uint32_t amask = 1; amask + 1 < m; ++amask) {
      Rational pa = pe[amask];
      if (pa == 0) continue;
      std::vector<std::uint32_t> uninf;
      for (std::uint32_t cmask = 1; cmask < m; ++cmask)
        if (pe[cmask] == 0 || pe[amask & cmask] == pa * pe[cmask])
          uninf.push_back(cmask);
      for (std::size_t x = 0; x < uninf.size(); ++x)
        for (std::size_t y = x + 1; y < uninf.size(); ++y) {
          std::uint32_t d = uninf[x] & uninf[y];
          if (pe[d] > 0 && pe[amask & d] != pa * pe[d]) {
            out.push_back(
                Json{{"A", event_json(f, to_event(amask))},
                     {"B", event_json(f, omega)},
                     {"C1", event_json(f, to_event(uninf[x]))},
                     {"C2", event_json(f, to_event(uninf[y]))},
                     {"p_ab", rational_fraction(pa)},
                     {"p_abc", rational_fraction(pe[amask & d] / pe[d])}});
            if (out.size() >= cap) return out;
          }
        }
    }
    return out;
  }

  // Larger fields: restrict the pool to cylinders and their pairwise unions.
  std::vector<Event> pool;
  auto cyl = cylinders(f);
  for (auto& [i, l, e] : cyl) pool.push_back(e);
  for (std::size_t x = 0; x < cyl.size() && pool.size() < 200; ++x)
    for (std::size_t y = x + 1; y < cyl.size() && pool.size() < 200; ++y)
      pool.push_back(std::get<2>(cyl[x]).unite(std::get<2>(cyl[y])));
  for (const Event& a : pool) {
    Rational pa = event_prob(f, a);
    if (pa == 0) continue;
    std::vector<const Event*> uninf;
    for (const Event& c : pool) {
      Rational pc = event_prob(f, c);
      if (pc == 0 || event_prob(f, a.intersect(c)) == pa * pc)
        uninf.push_back(&c);
    }
    for (std::size_t x = 0; x < uninf.size(); ++x)
      for (std::size_t y = x + 1; y < uninf.size(); ++y) {
        Event d = uninf[x]->intersect(*uninf[y]);
        Rational pd = event_prob(f, d);
        if (pd > 0 && event_prob(f, a.intersect(d)) != pa * pd) {
          out.push_back(Json{
              {"A", event_json(f, a)},
              {"B", event_json(f, omega)},
              {"C1", event_json(f, *uninf[x])},
              {"C2", event_json(f, *uninf[y])},
              {"p_ab", rational_fraction(pa)},
              {"p_abc", rational_fraction(event_prob(f, a.intersect(d)) / pd)}});
          if (out.size() >= cap) return out;
        }
      }
  }
  return out;
}

std::vector<Json> eval_mi_downward(const JointField& f, std::size_t cap) {
  std::vector<Json> out;
  for (int i = 0; i < f.site_count(); ++i) {
    SiteSet rest = SiteSet::full(f.site_count()).without(i);
    std::map<std::uint32_t, bool> minimal;
    for_each_subset(rest, [&](SiteSet s) {
      minimal[s.bits] = mi_membership(f, i, s).minimal;
    });
    for_each_subset(rest, [&](SiteSet big) {
      if (out.size() >= cap || !minimal[big.bits]) return;
      for_each_subset(big, [&](SiteSet sub) {
        if (out.size() >= cap) return;
        if (sub == big || sub.empty() || minimal[sub.bits]) return;
        out.push_back(Json{{"site", f.site_names()[i]},
                           {"set", siteset_json(f, big)},
                           {"subset", siteset_json(f, sub)}});
      });
    });
    if (out.size() >= cap) break;
  }
  return out;
}

std::vector<Json> eval_two_agents(const JointField& f, std::size_t cap) {
  std::vector<Json> out;
  Event omega = Event::whole(f);
  auto cyl = cylinders(f);
  for (auto& [ai, al, a] : cyl) {
    for (int y = 0; y < f.site_count(); ++y) {
      if (y == ai) continue;
      std::vector<Event> cells;
      for (int l = 0; l < f.alphabet_size(y); ++l)
        cells.push_back(Event::site_value(f, y, l));
      bool blind_ok = true;  // the less-informed agent never updates
      for (const Event& c : cells)
        if (!is_uninformative(f, a, omega, c).uninformative()) {
          blind_ok = false;
          break;
        }
      if (!blind_ok) continue;
      for (auto& [bi, bl, b] : cyl) {
        if (bi == ai || bi == y) continue;
        Rational pb = event_prob(f, b);
        if (pb == 0 || pb == 1) continue;
        for (const Event& c : cells) {
          UNVerdict v = is_uninformative(f, a, b, c);
          if (v.uninformative()) continue;
          out.push_back(Json{{"A", event_json(f, a)},
                             {"B", event_json(f, b)},
                             {"partition_site", f.site_names()[y]},
                             {"cell", event_json(f, c)},
                             {"p_ab", rational_fraction(*v.right)},
                             {"p_abc", rational_fraction(*v.left)}});
          if (out.size() >= cap) return out;
        }
      }
    }
  }
  return out;
}

}  // namespace

std::vector<Json> eval_property(PropertyId id, const JointField& field,
                                std::size_t cap) {
  switch (id) {
    case PropertyId::UnUnionClosure: return eval_un_union(field, cap);
    case PropertyId::UnIntersectionClosure:
      return eval_un_intersection(field, cap);
    case PropertyId::PartitionConstant:
      return eval_partition_constant(field, cap);
    case PropertyId::SiMonotoneA: return eval_si_monotone(field, true, cap);
    case PropertyId::SiMonotoneB: return eval_si_monotone(field, false, cap);
    case PropertyId::PropositionCoarse:
      return eval_proposition_coarse(field, cap);
    case PropertyId::CorollaryDependence: return eval_corollary(field, cap);
    case PropertyId::PositivityWelldef: return eval_positivity(field, cap);
    case PropertyId::MiDownwardClosure: return eval_mi_downward(field, cap);
    case PropertyId::TwoAgents: return eval_two_agents(field, cap);
  }
  return {};
}

// ---------------------------------------------------------------------------
// Field enumeration

namespace {

JointField shape_field(const std::vector<int>& arity,
                       const std::vector<Rational>& weights) {
  FieldSpec spec;
  const int n = static_cast<int>(arity.size());
  for (int i = 0; i < n; ++i) {
    spec.site_names.push_back("X" + std::to_string(i + 1));
    std::vector<std::string> alpha;
    for (int l = 0; l < arity[i]; ++l) alpha.push_back(std::to_string(l));
    spec.alphabets.push_back(std::move(alpha));
  }
  // Cell order matches the field's own codec (site 0 most significant).
  std::uint64_t cells = weights.size();
  for (std::uint64_t c = 0; c < cells; ++c) {
    if (weights[c] == 0) continue;
    std::vector<std::string> row(n);
    std::uint64_t rem = c;
    for (int i = n - 1; i >= 0; --i) {
      row[i] = std::to_string(rem % arity[i]);
      rem /= arity[i];
    }
    spec.rows.emplace_back(std::move(row), weights[c]);
  }
  return JointField::build(spec);
}

// Every site label must appear in a positive-weight cell.
bool weights_admissible(const std::vector<int>& arity,
                        const std::vector<long>& w) {
  const int n = static_cast<int>(arity.size());
  bool any = false;
  for (long x : w) any = any || x > 0;
  if (!any) return false;
  for (int i = 0; i < n; ++i) {
    std::uint64_t stride = 1;
    for (int j = i + 1; j < n; ++j) stride *= arity[j];
    for (int l = 0; l < arity[i]; ++l) {
      bool seen = false;
      for (std::uint64_t c = 0; c < w.size() && !seen; ++c)
        seen = w[c] > 0 && (c / stride % arity[i]) == std::uint64_t(l);
      if (!seen) return false;
    }
  }
  return true;
}

std::vector<std::vector<int>> shapes(const EnumerationBounds& b) {
  if (b.max_sites < 1)
    throw Error(Errc::ParseError, "max_sites must be at least 1");
  if (b.max_alphabet < 2)
    throw Error(Errc::ParseError, "max_alphabet must be at least 2");
  std::vector<std::vector<int>> out;
  for (int n = 1; n <= b.max_sites; ++n) {
    std::vector<int> arity(n, 2);
    while (true) {
      out.push_back(arity);
      int k = n - 1;
      while (k >= 0 && arity[k] == b.max_alphabet) arity[k--] = 2;
      if (k < 0) break;
      ++arity[k];
    }
  }
  return out;
}

std::string dedup_key(const std::vector<int>& arity,
                      const std::vector<Rational>& mass) {
  std::string key;
  for (int m : arity) key += std::to_string(m) + ",";
  key += "|";
  for (const Rational& r : mass) key += rational_fraction(r) + ";";
  return key;
}

}  // namespace

std::size_t enumerate_fields(
    const EnumerationBounds& bounds,
    const std::function<bool(std::size_t, const JointField&)>& visit) {
  std::vector<long> grid = bounds.weight_grid;
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  if (grid.empty() || grid.back() <= 0)
    throw Error(Errc::ParseError, "weight grid needs a positive element");
  if (grid.front() < 0)
    throw Error(Errc::ParseError, "weights must be nonnegative");

  auto all_shapes = shapes(bounds);

  // Projected exhaustive size, checked before any work happens.
  long double projected = 0;
  for (const auto& arity : all_shapes) {
    long double cells = 1;
    for (int m : arity) cells *= m;
    projected += std::pow(static_cast<long double>(grid.size()), cells);
    if (projected > static_cast<long double>(bounds.hard_cap))
      throw Error(Errc::BoundsTooLarge,
                  "projected stream exceeds cap " +
                      std::to_string(bounds.hard_cap));
  }

  std::size_t index = 0;
  std::unordered_set<std::string> seen;

  for (const auto& arity : all_shapes) {
    std::uint64_t cells = 1;
    for (int m : arity) cells *= m;
    std::vector<std::size_t> pick(cells, 0);  // grid indices, odometer
    while (true) {
      std::vector<long> w(cells);
      for (std::uint64_t c = 0; c < cells; ++c) w[c] = grid[pick[c]];
      if (weights_admissible(arity, w)) {
        std::vector<Rational> weights(cells);
        for (std::uint64_t c = 0; c < cells; ++c) weights[c] = w[c];
        JointField field = shape_field(arity, weights);
        if (seen.insert(dedup_key(arity, field.masses())).second) {
          if (!visit(index, field)) return index + 1;
          ++index;
        }
      }
      std::uint64_t k = 0;
      while (k < cells && pick[k] + 1 == grid.size()) pick[k++] = 0;
      if (k == cells) break;
      ++pick[k];
    }
  }

  std::mt19937_64 rng(bounds.seed);
  std::uniform_int_distribution<int> site_dist(1, bounds.max_sites);
  std::uniform_int_distribution<int> arity_dist(2, bounds.max_alphabet);
  std::uniform_int_distribution<std::size_t> grid_dist(0, grid.size() - 1);
  for (int t = 0; t < bounds.random_count; ++t) {
    JointField field = [&] {
      for (int attempt = 0; attempt < 10000; ++attempt) {
        int n = site_dist(rng);
        std::vector<int> arity(n);
        for (int& m : arity) m = arity_dist(rng);
        std::uint64_t cells = 1;
        for (int m : arity) cells *= m;
        std::vector<long> w(cells);
        for (auto& x : w) x = grid[grid_dist(rng)];
        if (!weights_admissible(arity, w)) continue;
        std::vector<Rational> weights(w.begin(), w.end());
        return shape_field(arity, weights);
      }
      // Degenerate grids can make rejection sampling hopeless; fall back to
      // the uniform field on two fair coins.
      std::vector<Rational> weights(4, Rational(grid.back()));
      return shape_field({2, 2}, weights);
    }();
    if (!visit(index, field)) return index + 1;
    ++index;
  }
  return index;
}

std::vector<JointField> enumerate_fields(const EnumerationBounds& bounds) {
  std::vector<JointField> out;
  enumerate_fields(bounds, [&](std::size_t, const JointField& f) {
    out.push_back(f);
    return true;
  });
  return out;
}

JointField random_field(std::mt19937_64& rng, const RandomFieldOptions& opts) {
  std::uniform_int_distribution<int> site_dist(1, opts.max_sites);
  std::uniform_int_distribution<int> arity_dist(2, opts.max_alphabet);
  long lo = opts.strictly_positive ? 1 : 0;
  std::uniform_int_distribution<long> weight_dist(lo, opts.max_weight);
  while (true) {
    int n = site_dist(rng);
    std::vector<int> arity(n);
    for (int& m : arity) m = arity_dist(rng);
    std::uint64_t cells = 1;
    for (int m : arity) cells *= m;
    std::vector<long> w(cells);
    for (auto& x : w) x = weight_dist(rng);
    if (!weights_admissible(arity, w)) continue;
    std::vector<Rational> weights(w.begin(), w.end());
    return shape_field(arity, weights);
  }
}

MineResult mine(PropertyId id, const EnumerationBounds& bounds,
                std::size_t witness_cap) {
  MineResult result;
  result.fields_scanned = enumerate_fields(
      bounds, [&](std::size_t index, const JointField& field) {
        auto found =
            eval_property(id, field, witness_cap - result.witnesses.size());
        for (auto& detail : found)
          result.witnesses.push_back(
              Witness{id, index, field, std::move(detail)});
        return result.witnesses.size() < witness_cap;
      });
  return result;
}

EnumerationBounds default_bounds(PropertyId id) {
  EnumerationBounds b;
  switch (id) {
    case PropertyId::UnIntersectionClosure:
      // Zero-marginal pruning leaves exactly the uniform fields here, which
      // is where the classic intersection counterexample lives.
      b.max_sites = 1;
      b.max_alphabet = 8;
      b.weight_grid = {0, 1};
      break;
    case PropertyId::MiDownwardClosure:
    case PropertyId::TwoAgents:
      b.max_sites = 3;
      b.max_alphabet = 2;
      b.weight_grid = {0, 1};
      break;
    default:
      b.max_sites = 3;
      b.max_alphabet = 2;
      b.weight_grid = {0, 1};
      b.random_count = 100;
      b.seed = 7;
      break;
  }
  return b;
}

bool revalidate(const Witness& w) {
  const JointField& f = w.field;
  switch (w.property) {
    case PropertyId::UnIntersectionClosure: {
      Event a = event_from_json(f, w.detail.at("A"));
      Event b = event_from_json(f, w.detail.at("B"));
      Event c1 = event_from_json(f, w.detail.at("C1"));
      Event c2 = event_from_json(f, w.detail.at("C2"));
      return is_uninformative(f, a, b, c1).uninformative() &&
             is_uninformative(f, a, b, c2).uninformative() &&
             !is_uninformative(f, a, b, c1.intersect(c2)).uninformative();
    }
    case PropertyId::MiDownwardClosure: {
      int i = f.site_index(w.detail.at("site").get<std::string>());
      SiteSet big = siteset_from_json(f, w.detail.at("set"));
      SiteSet sub = siteset_from_json(f, w.detail.at("subset"));
      return sub != big && !sub.empty() && sub.subset_of(big) &&
             mi_membership(f, i, big).minimal &&
             !mi_membership(f, i, sub).minimal;
    }
    case PropertyId::TwoAgents: {
      Event a = event_from_json(f, w.detail.at("A"));
      Event b = event_from_json(f, w.detail.at("B"));
      int y = f.site_index(w.detail.at("partition_site").get<std::string>());
      Event omega = Event::whole(f);
      bool informative_somewhere = false;
      for (int l = 0; l < f.alphabet_size(y); ++l) {
        Event cell = Event::site_value(f, y, l);
        if (!is_uninformative(f, a, omega, cell).uninformative()) return false;
        if (!is_uninformative(f, a, b, cell).uninformative())
          informative_somewhere = true;
      }
      return informative_somewhere;
    }
    default: {
      auto found = eval_property(w.property, f, 1'000'000);
      return std::find(found.begin(), found.end(), w.detail) != found.end();
    }
  }
}

bool TheoremReport::all_pass() const {
  for (const auto& e : entries)
    if (!e.pass) return false;
  return true;
}

TheoremReport check_theorems(const JointField& field, int lattice_guard) {
  if (field.site_count() > lattice_guard)
    throw Error(Errc::InstanceTooLarge,
                "n=" + std::to_string(field.site_count()) +
                    " exceeds lattice guard " + std::to_string(lattice_guard));
  TheoremReport report;
  for (PropertyId id : must_hold_properties()) {
    TheoremEntry entry;
    entry.property = id;
    entry.witnesses = eval_property(id, field);
    entry.pass = entry.witnesses.empty();
    report.entries.push_back(std::move(entry));
  }
  return report;
}

}  // namespace crf
