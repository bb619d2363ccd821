#include "crf/field.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace crf {

namespace {

// Joint tables are dense; keep the product of alphabet sizes sane.
constexpr std::uint64_t kMaxCells = std::uint64_t(1) << 24;

}  // namespace

JointField JointField::build(const FieldSpec& spec, const BuildOptions& opts) {
  if (spec.site_names.empty())
    throw Error(Errc::EmptySpec, "field needs at least one site");
  if (!spec.alphabets.empty() && spec.alphabets.size() != spec.site_names.size())
    throw Error(Errc::ParseError, "alphabet count does not match site count");

  const int n = static_cast<int>(spec.site_names.size());

  std::vector<std::vector<std::string>> alphabets = spec.alphabets;
  if (alphabets.empty()) {
    // Infer alphabets from the rows, in order of first appearance.
    alphabets.assign(n, {});
    for (const auto& [labels, w] : spec.rows) {
      if (static_cast<int>(labels.size()) != n)
        throw Error(Errc::ParseError, "row arity does not match site count");
      for (int i = 0; i < n; ++i) {
        auto& a = alphabets[i];
        if (std::find(a.begin(), a.end(), labels[i]) == a.end())
          a.push_back(labels[i]);
      }
    }
  }
  for (int i = 0; i < n; ++i) {
    if (alphabets[i].empty())
      throw Error(Errc::EmptySpec,
                  "site " + spec.site_names[i] + " has an empty alphabet");
    std::set<std::string> distinct(alphabets[i].begin(), alphabets[i].end());
    if (distinct.size() != alphabets[i].size())
      throw Error(Errc::DuplicateAssignment,
                  "duplicate label in alphabet of " + spec.site_names[i]);
  }

  JointField f;
  f.names_ = spec.site_names;
  f.alphabets_ = std::move(alphabets);
  f.stride_.assign(n, 1);
  std::uint64_t cells = 1;
  for (int i = n - 1; i >= 0; --i) {
    f.stride_[i] = cells;
    cells *= f.alphabets_[i].size();
    if (cells > kMaxCells)
      throw Error(Errc::InstanceTooLarge,
                  "joint table exceeds " + std::to_string(kMaxCells) + " cells");
  }
  f.mass_.assign(cells, Rational(0));

  Rational total(0);
  std::vector<int> digits(n);
  for (const auto& [labels, w] : spec.rows) {
    if (static_cast<int>(labels.size()) != n)
      throw Error(Errc::ParseError, "row arity does not match site count");
    if (w < 0) throw Error(Errc::ParseError, "negative weight");
    for (int i = 0; i < n; ++i) digits[i] = f.label_index(i, labels[i]);
    std::uint64_t code = f.encode(digits);
    if (f.mass_[code] != 0)
      throw Error(Errc::DuplicateAssignment,
                  "assignment listed twice (code " + std::to_string(code) + ")");
    f.mass_[code] = w;
    total += w;
  }
  if (total == 0) throw Error(Errc::ZeroTotalWeight, "all weights are zero");
  for (auto& m : f.mass_) m /= total;

  // Standing assumption: every label has positive marginal probability.
  for (int i = 0; i < n; ++i) {
    std::vector<char> seen(f.alphabets_[i].size(), 0);
    for (std::uint64_t c = 0; c < cells; ++c)
      if (f.mass_[c] > 0) seen[f.digit(c, i)] = 1;
    bool all = std::all_of(seen.begin(), seen.end(), [](char s) { return s; });
    if (all) continue;
    if (!opts.prune_unreachable) {
      int bad = static_cast<int>(
          std::find(seen.begin(), seen.end(), 0) - seen.begin());
      throw Error(Errc::ZeroMarginalLabel,
                  "site " + f.names_[i] + ", label " + f.alphabets_[i][bad]);
    }
    // Rebuild without the unreachable labels.
    FieldSpec pruned;
    pruned.site_names = f.names_;
    pruned.alphabets.resize(n);
    for (int s = 0; s < n; ++s) {
      if (s != i) {
        pruned.alphabets[s] = f.alphabets_[s];
        continue;
      }
      for (std::size_t l = 0; l < f.alphabets_[s].size(); ++l)
        if (seen[l]) pruned.alphabets[s].push_back(f.alphabets_[s][l]);
    }
    for (std::uint64_t c = 0; c < cells; ++c) {
      if (f.mass_[c] == 0) continue;
      auto d = f.decode(c);
      std::vector<std::string> labels(n);
      for (int s = 0; s < n; ++s) labels[s] = f.alphabets_[s][d[s]];
      pruned.rows.emplace_back(std::move(labels), f.mass_[c]);
    }
    return build(pruned, opts);
  }
  return f;
}

std::uint64_t JointField::encode(std::span<const int> labels) const {
  std::uint64_t code = 0;
  for (int i = 0; i < site_count(); ++i) code += labels[i] * stride_[i];
  return code;
}

std::vector<int> JointField::decode(std::uint64_t code) const {
  std::vector<int> out(site_count());
  for (int i = 0; i < site_count(); ++i) out[i] = digit(code, i);
  return out;
}

std::uint64_t JointField::scope_cells(SiteSet scope) const {
  std::uint64_t cells = 1;
  for (int i : scope.members()) cells *= alphabets_[i].size();
  return cells;
}

std::uint64_t JointField::restrict_code(std::uint64_t full_code,
                                        SiteSet scope) const {
  std::uint64_t code = 0;
  for (int i : scope.members())
    code = code * alphabets_[i].size() + digit(full_code, i);
  return code;
}

std::uint64_t JointField::scope_encode(SiteSet scope,
                                       std::span<const int> labels) const {
  std::uint64_t code = 0;
  std::size_t k = 0;
  for (int i : scope.members())
    code = code * alphabets_[i].size() + labels[k++];
  return code;
}

std::vector<int> JointField::scope_decode(SiteSet scope,
                                          std::uint64_t code) const {
  auto sites = scope.members();
  std::vector<int> out(sites.size());
  for (int k = static_cast<int>(sites.size()) - 1; k >= 0; --k) {
    std::uint64_t m = alphabets_[sites[k]].size();
    out[k] = static_cast<int>(code % m);
    code /= m;
  }
  return out;
}

std::uint64_t JointField::scope_restrict(SiteSet scope, std::uint64_t code,
                                         SiteSet sub) const {
  auto digits = scope_decode(scope, code);
  auto sites = scope.members();
  std::uint64_t out = 0;
  for (std::size_t k = 0; k < sites.size(); ++k)
    if (sub.contains(sites[k]))
      out = out * alphabets_[sites[k]].size() + digits[k];
  return out;
}

int JointField::site_index(std::string_view name) const {
  for (int i = 0; i < site_count(); ++i)
    if (names_[i] == name) return i;
  throw Error(Errc::SiteOutOfRange, "no site named " + std::string(name));
}

int JointField::label_index(int site, std::string_view label) const {
  const auto& a = alphabets_[site];
  for (std::size_t l = 0; l < a.size(); ++l)
    if (a[l] == label) return static_cast<int>(l);
  throw Error(Errc::UnknownLabel,
              "site " + names_[site] + " has no label " + std::string(label));
}

const Rational& ConditionalTable::at(int x_target,
                                     std::uint64_t scope_code) const {
  return prob[scope_code * target_arity() + x_target];
}

Event Event::whole(const JointField& f) {
  Event e;
  e.codes.resize(f.cell_count());
  std::iota(e.codes.begin(), e.codes.end(), 0);
  return e;
}

Event Event::from_codes(std::vector<std::uint64_t> codes) {
  std::sort(codes.begin(), codes.end());
  codes.erase(std::unique(codes.begin(), codes.end()), codes.end());
  return Event{std::move(codes)};
}

Event Event::from_assignments(
    const JointField& f, const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::uint64_t> codes;
  std::vector<int> digits(f.site_count());
  for (const auto& labels : rows) {
    if (static_cast<int>(labels.size()) != f.site_count())
      throw Error(Errc::MalformedEvent, "assignment arity mismatch");
    for (int i = 0; i < f.site_count(); ++i) {
      try {
        digits[i] = f.label_index(i, labels[i]);
      } catch (const Error&) {
        throw Error(Errc::MalformedEvent,
                    "label " + labels[i] + " not in alphabet of " +
                        f.site_names()[i]);
      }
    }
    codes.push_back(f.encode(digits));
  }
  return from_codes(std::move(codes));
}

Event Event::site_value(const JointField& f, int site, int label) {
  std::vector<std::uint64_t> codes;
  for (std::uint64_t c = 0; c < f.cell_count(); ++c)
    if (f.digit(c, site) == label) codes.push_back(c);
  return Event{std::move(codes)};
}

Event Event::intersect(const Event& other) const {
  Event out;
  std::set_intersection(codes.begin(), codes.end(), other.codes.begin(),
                        other.codes.end(), std::back_inserter(out.codes));
  return out;
}

Event Event::unite(const Event& other) const {
  Event out;
  std::set_union(codes.begin(), codes.end(), other.codes.begin(),
                 other.codes.end(), std::back_inserter(out.codes));
  return out;
}

Event Event::complement(const JointField& f) const {
  Event out;
  std::size_t k = 0;
  for (std::uint64_t c = 0; c < f.cell_count(); ++c) {
    if (k < codes.size() && codes[k] == c)
      ++k;
    else
      out.codes.push_back(c);
  }
  return out;
}

bool Event::disjoint_with(const Event& other) const {
  std::size_t i = 0, j = 0;
  while (i < codes.size() && j < other.codes.size()) {
    if (codes[i] == other.codes[j]) return false;
    if (codes[i] < other.codes[j])
      ++i;
    else
      ++j;
  }
  return true;
}

bool Event::contains(std::uint64_t code) const {
  return std::binary_search(codes.begin(), codes.end(), code);
}

MarginalTable marginal(const JointField& field, SiteSet scope) {
  field.check_scope(scope);
  MarginalTable t;
  t.scope = scope;
  t.prob.assign(field.scope_cells(scope), Rational(0));
  for (std::uint64_t c = 0; c < field.cell_count(); ++c) {
    const Rational& m = field.mass(c);
    if (m != 0) t.prob[field.restrict_code(c, scope)] += m;
  }
  for (std::uint64_t s = 0; s < t.prob.size(); ++s)
    if (t.prob[s] > 0) t.support.push_back(s);
  return t;
}

std::vector<MarginalTable> marginal_lattice(const JointField& field,
                                            int lattice_guard) {
  const int n = field.site_count();
  if (n > lattice_guard)
    throw Error(Errc::InstanceTooLarge,
                "n=" + std::to_string(n) + " exceeds lattice guard " +
                    std::to_string(lattice_guard));
  const std::uint32_t full = SiteSet::full(n).bits;
  std::vector<MarginalTable> out(std::size_t(1) << n);

  out[full].scope = SiteSet(full);
  out[full].prob = field.masses();

  // Order subsets by decreasing popcount; each table is obtained from the
  // superset that re-adds its lowest missing site, summed over that site.
  std::vector<std::uint32_t> order;
  order.reserve(out.size());
  for (std::uint32_t s = 0; s <= full; ++s) order.push_back(s);
  std::sort(order.begin(), order.end(), [](std::uint32_t a, std::uint32_t b) {
    int pa = std::popcount(a), pb = std::popcount(b);
    return pa != pb ? pa > pb : a < b;
  });

  for (std::uint32_t s : order) {
    if (s == full) continue;
    SiteSet scope(s);
    int j = SiteSet(full & ~s).lowest();
    SiteSet parent = scope.with(j);
    const MarginalTable& src = out[parent.bits];
    MarginalTable& dst = out[s];
    dst.scope = scope;
    dst.prob.assign(field.scope_cells(scope), Rational(0));
    for (std::uint64_t c = 0; c < src.prob.size(); ++c) {
      if (src.prob[c] == 0) continue;
      dst.prob[field.scope_restrict(parent, c, scope)] += src.prob[c];
    }
  }
  for (auto& t : out) {
    t.support.clear();
    for (std::uint64_t s = 0; s < t.prob.size(); ++s)
      if (t.prob[s] > 0) t.support.push_back(s);
  }
  return out;
}

ConditionalTable conditional(const JointField& field, int target,
                             SiteSet scope) {
  field.check_site(target);
  field.check_scope(scope);
  const int m = field.alphabet_size(target);
  ConditionalTable t;
  t.target = target;
  t.scope = scope;
  MarginalTable ms = marginal(field, scope);
  t.support = ms.support;
  t.defined.assign(ms.prob.size(), 0);
  t.prob.assign(ms.prob.size() * m, Rational(0));

  if (scope.contains(target)) {
    // Degenerate case: the value of the target is part of the condition, so
    // the table is the 0/1 agreement indicator on D_scope.
    auto sites = scope.members();
    int pos = static_cast<int>(
        std::find(sites.begin(), sites.end(), target) - sites.begin());
    for (std::uint64_t s : t.support) {
      t.defined[s] = 1;
      auto digits = field.scope_decode(scope, s);
      t.prob[s * m + digits[pos]] = 1;
    }
    return t;
  }

  MarginalTable joint = marginal(field, scope.with(target));
  for (std::uint64_t s : t.support) {
    t.defined[s] = 1;
    auto digits = field.scope_decode(scope, s);
    // Build the extended assignment over scope + target for each x_target.
    auto sites = scope.members();
    std::vector<int> ext(sites.size() + 1);
    SiteSet wide = scope.with(target);
    auto wide_sites = wide.members();
    for (int x = 0; x < m; ++x) {
      std::size_t k = 0;
      for (std::size_t w = 0; w < wide_sites.size(); ++w)
        ext[w] = (wide_sites[w] == target) ? x : digits[k++];
      const Rational& top = joint.prob[field.scope_encode(wide, ext)];
      if (top != 0) t.prob[s * m + x] = top / ms.prob[s];
    }
  }
  return t;
}

Rational event_prob(const JointField& field, const Event& a) {
  Rational p(0);
  for (std::uint64_t c : a.codes) {
    if (c >= field.cell_count())
      throw Error(Errc::MalformedEvent, "event code out of range");
    p += field.mass(c);
  }
  return p;
}

std::optional<Rational> event_conditional(const JointField& field,
                                          const Event& a, const Event& b) {
  Rational pb = event_prob(field, b);
  if (pb == 0) return std::nullopt;
  return event_prob(field, a.intersect(b)) / pb;
}

bool is_positive(const JointField& field) {
  for (std::uint64_t c = 0; c < field.cell_count(); ++c)
    if (field.mass(c) == 0) return false;
  return true;
}

}  // namespace crf
