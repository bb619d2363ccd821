// Acceptance suite: one line per criterion, nonzero exit on any failure.
// Every check is exact rational equality; the only tolerances are the
// per-criterion wall-clock budgets, enforced here.

#include <chrono>
#include <iostream>
#include <random>
#include <sstream>

#include "crf/fixtures.hpp"
#include "crf/info_sets.hpp"
#include "crf/io.hpp"
#include "crf/miner.hpp"

using namespace crf;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;

void report(int number, const std::string& name, bool pass, double secs,
            double budget_secs, const std::string& note = "") {
  bool ok = pass && secs <= budget_secs;
  if (!ok) ++failures;
  std::cout << "criterion " << number << " [" << name << "]: "
            << (ok ? "PASS" : "FAIL") << " (" << secs << "s, budget "
            << budget_secs << "s)";
  if (!note.empty() && !ok) std::cout << " -- " << note;
  if (pass && secs > budget_secs) std::cout << " -- over time budget";
  std::cout << "\n";
}

struct Timer {
  Clock::time_point start = Clock::now();
  double secs() const {
    return std::chrono::duration<double>(Clock::now() - start).count();
  }
};

Rational r(long p, long q = 1) { return Rational(p, q); }

// 1. Example 2 reproduction on UNIFORM8.
void criterion1() {
  Timer t;
  Fixture fx = builtin_fixture(FixtureId::Uniform8);
  const auto& f = fx.field;
  Event a = fx.events.at("A"), b = fx.events.at("B");
  Event c1 = fx.events.at("C1"), c2 = fx.events.at("C2");
  bool pass = event_conditional(f, a, b) == r(1, 2);
  pass = pass && is_uninformative(f, a, b, c1).status ==
                     UNVerdict::Status::MemberEqual;
  pass = pass && is_uninformative(f, a, b, c2).status ==
                     UNVerdict::Status::MemberEqual;
  Event both = c1.intersect(c2);
  UNVerdict v = is_uninformative(f, a, b, both);
  pass = pass && v.status == UNVerdict::Status::Informative;
  pass = pass && v.left == r(0);
  pass = pass && event_prob(f, b.intersect(both)) == r(1, 8);
  report(1, "example-2-uniform8", pass, t.secs(), 1.0);
}

// 2. Example 3 / Table 1 reproduction.
void criterion2() {
  Timer t;
  JointField f = builtin_fixture(FixtureId::Table1).field;
  int x = f.site_index("X"), y = f.site_index("Y"), z = f.site_index("Z");
  int x1 = f.label_index(x, "1");
  SiteSet sy = SiteSet::of({y}), syz = SiteSet::of({y, z});

  ConditionalTable px = conditional(f, x, SiteSet());
  ConditionalTable pxy = conditional(f, x, sy);
  ConditionalTable pxyz = conditional(f, x, syz);
  auto yz = [&](const char* yv, const char* zv) {
    std::vector<int> d = {f.label_index(y, yv), f.label_index(z, zv)};
    return f.scope_encode(syz, d);
  };
  bool pass = px.at(x1, 0) == r(1, 2);
  pass = pass && pxy.at(x1, f.label_index(y, "0")) == r(1, 2);
  pass = pass && pxy.at(x1, f.label_index(y, "1")) == r(1, 2);
  pass = pass && pxyz.at(x1, yz("1", "0")) == r(0);
  pass = pass && pxyz.at(x1, yz("0", "0")) == r(1, 2);

  pass = pass && mi_membership(f, x, syz).minimal;
  auto mi_y = mi_membership(f, x, sy);
  pass = pass && !mi_y.minimal && mi_y.reducing == SiteSet();
  report(2, "example-3-table1", pass, t.secs(), 1.0);
}

// 3. Example 4 / Table 2 reproduction.
void criterion3() {
  Timer t;
  JointField f = builtin_fixture(FixtureId::Table2).field;
  int x = f.site_index("X"), y = f.site_index("Y");
  std::vector<int> xy = {f.label_index(x, "1"), f.label_index(y, "0")};
  bool pass = !is_positive(f);
  pass = pass && f.mass(f.encode(xy)) == 0;

  EsResult ex = es_family(f, x);
  pass = pass && ex.family.member_sets == std::vector<SiteSet>{SiteSet::of({y})};
  pass = pass && ex.neighbor == SiteSet::of({y});
  EsResult ey = es_family(f, y);
  pass = pass && ey.family.member_sets == std::vector<SiteSet>{SiteSet::of({x})};
  pass = pass && ey.neighbor == SiteSet::of({x});
  report(3, "example-4-table2", pass, t.secs(), 1.0);
}

// 4. Positivity lemma over 200+ strictly positive random fields.
void criterion4() {
  Timer t;
  std::mt19937_64 rng(20240814);
  bool pass = true;
  std::string note;
  for (int k = 0; k < 200 && pass; ++k) {
    JointField f = random_field(
        rng, {.max_sites = 4, .max_alphabet = 3, .max_weight = 9,
              .strictly_positive = true});
    for (int i = 0; i < f.site_count() && pass; ++i) {
      BesagStatus bs = reduction_family(f, i);
      EsResult es = es_family(f, i);
      pass = bs.well_defined && es.neighbor && !es.ambiguous &&
             bs.minimal_sets.size() == 1 &&
             bs.minimal_sets.front() == *es.neighbor;
      if (!pass) note = "field " + std::to_string(k) + " site " +
                        f.site_names()[i];
    }
  }
  report(4, "positivity-lemma-200-random", pass, t.secs(), 300.0, note);
}

// 5. MustHold sweep: exhaustive n<=3 binary grid {0,1,2} plus 500 seeded
// random fields.
void criterion5() {
  Timer t;
  EnumerationBounds bounds{.max_sites = 3, .max_alphabet = 2,
                           .weight_grid = {0, 1, 2}, .random_count = 500,
                           .seed = 20240815};
  bool pass = true;
  std::string note;
  std::size_t scanned = enumerate_fields(
      bounds, [&](std::size_t index, const JointField& f) {
        for (PropertyId id : must_hold_properties()) {
          if (!eval_property(id, f, 1).empty()) {
            pass = false;
            note = property_name(id) + " violated at stream index " +
                   std::to_string(index);
            return false;
          }
        }
        return true;
      });
  pass = pass && scanned > 500;
  report(5, "musthold-sweep", pass, t.secs(), 600.0, note);
}

// 6. Refutation mining with re-validation, plus fixture witnesses.
void criterion6() {
  bool all = true;
  auto mine_one = [&](PropertyId id) {
    Timer t;
    MineResult res = mine(id, default_bounds(id), 5);
    bool pass = !res.witnesses.empty();
    for (const auto& w : res.witnesses) pass = pass && revalidate(w);
    all = all && pass && t.secs() <= 60.0;
    return std::make_pair(pass, t.secs());
  };
  Timer t;
  auto [p1, s1] = mine_one(PropertyId::UnIntersectionClosure);
  auto [p2, s2] = mine_one(PropertyId::MiDownwardClosure);
  auto [p3, s3] = mine_one(PropertyId::TwoAgents);

  // Fixture-derived witnesses must re-validate too.
  Fixture u8 = builtin_fixture(FixtureId::Uniform8);
  Witness wu{PropertyId::UnIntersectionClosure, 0, u8.field,
             Json{{"A", event_json(u8.field, u8.events.at("A"))},
                  {"B", event_json(u8.field, u8.events.at("B"))},
                  {"C1", event_json(u8.field, u8.events.at("C1"))},
                  {"C2", event_json(u8.field, u8.events.at("C2"))}}};
  JointField t1 = builtin_fixture(FixtureId::Table1).field;
  Witness wm{PropertyId::MiDownwardClosure, 0, t1,
             Json{{"site", "X"},
                  {"set", Json::array({"Y", "Z"})},
                  {"subset", Json::array({"Y"})}}};
  Event a = Event::site_value(t1, 0, t1.label_index(0, "1"));
  Event z0 = Event::site_value(t1, 2, t1.label_index(2, "0"));
  Witness wt{PropertyId::TwoAgents, 0, t1,
             Json{{"A", event_json(t1, a)},
                  {"B", event_json(t1, z0)},
                  {"partition_site", "Y"}}};
  bool fixtures_ok = revalidate(wu) && revalidate(wm) && revalidate(wt);

  report(6, "refutation-mining", p1 && p2 && p3 && fixtures_ok && all,
         t.secs(), 180.0,
         "per-property times: " + std::to_string(s1) + "s " +
             std::to_string(s2) + "s " + std::to_string(s3) + "s");
}

// 7. marginal_lattice equals naive marginal everywhere.
void criterion7() {
  Timer t;
  bool pass = true;
  std::string note;
  auto check_field = [&](const JointField& f, const std::string& tag) {
    auto lattice = marginal_lattice(f);
    for_each_subset(SiteSet::full(f.site_count()), [&](SiteSet s) {
      if (!pass) return;
      MarginalTable naive = marginal(f, s);
      if (naive.prob != lattice[s.bits].prob ||
          naive.support != lattice[s.bits].support) {
        pass = false;
        note = "mismatch on " + tag;
      }
    });
  };
  for (FixtureId id : {FixtureId::Table1, FixtureId::Table2, FixtureId::Copy,
                       FixtureId::Chain, FixtureId::Uniform8})
    check_field(builtin_fixture(id).field, fixture_name(id));
  check_field(builtin_fixture(FixtureId::Coins, 4).field, "COINS");
  std::mt19937_64 rng(20240816);
  for (int k = 0; k < 100 && pass; ++k)
    check_field(random_field(rng, {.max_sites = 10, .max_alphabet = 2,
                                   .max_weight = 6}),
                "random " + std::to_string(k));
  report(7, "lattice-vs-naive-oracle", pass, t.secs(), 120.0, note);
}

// 8. Ill-definedness witness on COPY.
void criterion8() {
  Timer t;
  JointField f = builtin_fixture(FixtureId::Copy).field;
  int x3 = f.site_index("X3");
  SiteSet s1 = SiteSet::of({f.site_index("X1")});
  SiteSet s2 = SiteSet::of({f.site_index("X2")});
  BesagStatus bs = reduction_family(f, x3);
  bool pass = !bs.well_defined;
  pass = pass && bs.minimal_sets == std::vector<SiteSet>{s1, s2};
  SiteSetFamily si = si_family(f, x3, s1 | s2);
  pass = pass && si.member_sets == std::vector<SiteSet>{s1, s2, s1 | s2};
  report(8, "copy-ill-definedness", pass, t.secs(), 1.0);
}

}  // namespace

int main() {
  criterion1();
  criterion2();
  criterion3();
  criterion4();
  criterion5();
  criterion6();
  criterion7();
  criterion8();
  std::cout << (failures == 0 ? "ALL CRITERIA PASS"
                              : std::to_string(failures) + " CRITERIA FAILED")
            << "\n";
  return failures == 0 ? 0 : 1;
}
