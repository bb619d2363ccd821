#include "crf/io.hpp"

#include <algorithm>
#include <istream>
#include <sstream>

#include "crf/info_sets.hpp"

namespace crf {

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : line) {
    if (ch == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (ch != '\r') {
      cur += ch;
    }
  }
  out.push_back(cur);
  for (auto& s : out) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.erase(0, 1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.pop_back();
  }
  return out;
}

}  // namespace

JointField parse_field_csv(std::istream& in, const BuildOptions& opts) {
  std::string line;
  if (!std::getline(in, line))
    throw Error(Errc::ParseError, "empty CSV input");
  auto header = split_csv_line(line);
  if (header.size() < 2 || header.back() != "weight")
    throw Error(Errc::ParseError, "CSV header must end with a weight column");

  FieldSpec spec;
  spec.site_names.assign(header.begin(), header.end() - 1);
  while (std::getline(in, line)) {
    if (line.empty() || line == "\r") continue;
    auto cells = split_csv_line(line);
    if (cells.size() != header.size())
      throw Error(Errc::ParseError, "CSV row arity mismatch: " + line);
    Rational w = parse_rational(cells.back());
    cells.pop_back();
    spec.rows.emplace_back(std::move(cells), w);
  }
  return JointField::build(spec, opts);
}

JointField parse_field_json(std::istream& in, const BuildOptions& opts) {
  Json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw Error(Errc::ParseError, e.what());
  }
  if (!j.is_object() || !j.contains("sites") || !j.contains("rows"))
    throw Error(Errc::ParseError, "field JSON needs 'sites' and 'rows'");
  FieldSpec spec;
  for (const auto& site : j["sites"]) {
    spec.site_names.push_back(site.at("name").get<std::string>());
    spec.alphabets.push_back(
        site.at("alphabet").get<std::vector<std::string>>());
  }
  for (const auto& row : j["rows"]) {
    auto labels = row.at("assignment").get<std::vector<std::string>>();
    Rational w = parse_rational(row.at("weight").get<std::string>());
    spec.rows.emplace_back(std::move(labels), w);
  }
  return JointField::build(spec, opts);
}

Json field_json(const JointField& field) {
  Json sites = Json::array();
  for (int i = 0; i < field.site_count(); ++i)
    sites.push_back(Json{{"name", field.site_names()[i]},
                         {"alphabet", field.alphabets()[i]}});
  Json rows = Json::array();
  for (std::uint64_t c = 0; c < field.cell_count(); ++c) {
    if (field.mass(c) == 0) continue;
    rows.push_back(Json{{"assignment", assignment_json(field, c)},
                        {"weight", rational_fraction(field.mass(c))}});
  }
  return Json{{"sites", sites}, {"rows", rows}};
}

Json marginal_table_json(const JointField& field, const MarginalTable& table) {
  Json scope = Json::array();
  for (int i : table.scope.members()) scope.push_back(field.site_names()[i]);
  Json entries = Json::array();
  for (std::uint64_t code = 0; code < table.prob.size(); ++code)
    entries.push_back(
        Json{{"assignment", scope_assignment_json(field, table.scope, code)},
             {"p", rational_fraction(table.prob[code])}});
  return Json{{"scope", scope}, {"entries", entries}};
}

Json analyze_report_json(const JointField& field,
                         const std::vector<std::string>& only_sites,
                         int lattice_guard) {
  std::vector<int> sites;
  if (only_sites.empty()) {
    for (int i = 0; i < field.site_count(); ++i) sites.push_back(i);
  } else {
    for (const auto& name : only_sites) sites.push_back(field.site_index(name));
  }
  bool positive = is_positive(field);

  Json report = Json::array();
  for (int i : sites) {
    BesagStatus besag = reduction_family(field, i, lattice_guard);
    SiteSet rest = SiteSet::full(field.site_count()).without(i);
    SiteSetFamily si = si_family(field, i, rest, lattice_guard);
    SiteSetFamily mi = mi_family(field, i, lattice_guard);
    EsResult es = es_family(field, i, lattice_guard);

    auto family_json = [&](const std::vector<SiteSet>& sets) {
      Json out = Json::array();
      for (SiteSet s : sets) out.push_back(siteset_json(field, s));
      return out;
    };

    Json neighbor;
    if (es.ambiguous)
      neighbor = "ambiguous";
    else if (es.neighbor && es.neighbor->empty())
      neighbor = "empty";
    else if (es.neighbor)
      neighbor = siteset_json(field, *es.neighbor);
    else
      neighbor = "empty";

    report.push_back(Json{
        {"site", field.site_names()[i]},
        {"positive", positive},
        {"besag",
         Json{{"status", besag.well_defined ? "well-defined" : "ambiguous"},
              {"minimal_sets", family_json(besag.minimal_sets)}}},
        {"si_complement", family_json(si.member_sets)},
        {"mi", family_json(mi.member_sets)},
        {"es", family_json(es.family.member_sets)},
        {"neighbor", neighbor}});
  }
  return report;
}

Json theorem_report_json(const JointField& field, const TheoremReport& report) {
  Json entries = Json::array();
  for (const auto& e : report.entries) {
    Json w = Json::array();
    for (const auto& detail : e.witnesses) w.push_back(detail);
    entries.push_back(Json{{"property", property_name(e.property)},
                           {"pass", e.pass},
                           {"witnesses", w}});
  }
  return Json{{"field", field_json(field)},
              {"all_pass", report.all_pass()},
              {"checks", entries}};
}

Json witness_json(const Witness& w) {
  return Json{{"property", property_name(w.property)},
              {"field_index", w.field_index},
              {"field", field_json(w.field)},
              {"detail", w.detail}};
}

PointAssignment parse_point(const JointField& field, std::string_view text) {
  PointAssignment out;
  std::string s(text);
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    while (!item.empty() && item.front() == ' ') item.erase(0, 1);
    while (!item.empty() && item.back() == ' ') item.pop_back();
    if (item.empty()) continue;
    auto eq = item.find('=');
    if (eq == std::string::npos)
      throw Error(Errc::ParseError, "expected NAME=LABEL in '" + item + "'");
    int site = field.site_index(item.substr(0, eq));
    int label = field.label_index(site, item.substr(eq + 1));
    if (out.count(site))
      throw Error(Errc::ParseError,
                  "site given twice: " + field.site_names()[site]);
    out[site] = label;
  }
  return out;
}

CoarseConstraint parse_coarse(const JointField& field, std::string_view text) {
  CoarseConstraint out;
  // Split on commas outside braces.
  std::vector<std::string> items;
  std::string cur;
  int depth = 0;
  for (char ch : text) {
    if (ch == '{') ++depth;
    if (ch == '}') --depth;
    if (ch == ',' && depth == 0) {
      items.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  if (!cur.empty()) items.push_back(cur);

  for (std::string item : items) {
    while (!item.empty() && item.front() == ' ') item.erase(0, 1);
    while (!item.empty() && item.back() == ' ') item.pop_back();
    if (item.empty()) continue;
    // NAME∈{...} or NAME in {...}
    std::size_t brace = item.find('{');
    std::size_t close = item.rfind('}');
    if (brace == std::string::npos || close == std::string::npos ||
        close < brace)
      throw Error(Errc::ParseError, "expected NAME∈{L1,L2} in '" + item + "'");
    std::string name = item.substr(0, brace);
    // Strip the membership marker: UTF-8 "∈" or the word "in".
    auto in_pos = name.rfind(" in ");
    auto elem_pos = name.find("∈");
    if (elem_pos != std::string::npos)
      name = name.substr(0, elem_pos);
    else if (in_pos != std::string::npos)
      name = name.substr(0, in_pos);
    while (!name.empty() && name.back() == ' ') name.pop_back();
    int site = field.site_index(name);
    if (out.allowed.count(site))
      throw Error(Errc::ParseError,
                  "site constrained twice: " + field.site_names()[site]);
    std::string body = item.substr(brace + 1, close - brace - 1);
    std::stringstream ss(body);
    std::string label;
    while (std::getline(ss, label, ',')) {
      while (!label.empty() && label.front() == ' ') label.erase(0, 1);
      while (!label.empty() && label.back() == ' ') label.pop_back();
      out.allowed[site].push_back(field.label_index(site, label));
    }
    if (out.allowed[site].empty())
      throw Error(Errc::EmptyConstraint,
                  "no labels for site " + field.site_names()[site]);
    std::sort(out.allowed[site].begin(), out.allowed[site].end());
    out.allowed[site].erase(
        std::unique(out.allowed[site].begin(), out.allowed[site].end()),
        out.allowed[site].end());
  }
  return out;
}

}  // namespace crf
