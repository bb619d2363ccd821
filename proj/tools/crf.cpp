#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "crf/fixtures.hpp"
#include "crf/info_sets.hpp"
#include "crf/io.hpp"
#include "crf/miner.hpp"

namespace {

constexpr const char* kVersion = "crf 1.0.0";

crf::JointField load_field(const std::string& path, std::string format) {
  if (format.empty()) {
    if (path.size() > 4 && path.ends_with(".csv"))
      format = "csv";
    else
      format = "json";
  }
  auto parse = [&](std::istream& in) {
    return format == "csv" ? crf::parse_field_csv(in)
                           : crf::parse_field_json(in);
  };
  if (path == "-") return parse(std::cin);
  std::ifstream in(path);
  if (!in)
    throw crf::Error(crf::Errc::ParseError, "cannot open " + path);
  return parse(in);
}

// Text listings cap long set families; JSON output is always complete.
std::string family_text(const crf::JointField& f,
                        const std::vector<crf::SiteSet>& sets) {
  constexpr std::size_t kCap = 32;
  std::string out = "[";
  for (std::size_t k = 0; k < sets.size() && k < kCap; ++k) {
    if (k) out += " ";
    out += "{";
    auto m = sets[k].members();
    for (std::size_t j = 0; j < m.size(); ++j) {
      if (j) out += ",";
      out += f.site_names()[m[j]];
    }
    out += "}";
  }
  if (sets.size() > kCap)
    out += " +" + std::to_string(sets.size() - kCap) + " more";
  return out + "]";
}

int run_analyze(const std::string& input, const std::string& format,
                const std::vector<std::string>& sites, bool as_json,
                int guard) {
  crf::JointField field = load_field(input, format);
  if (as_json) {
    std::cout << crf::analyze_report_json(field, sites, guard).dump()
              << "\n";
    return 0;
  }
  bool positive = crf::is_positive(field);
  std::vector<int> targets;
  if (sites.empty())
    for (int i = 0; i < field.site_count(); ++i) targets.push_back(i);
  else
    for (const auto& s : sites) targets.push_back(field.site_index(s));
  std::cout << "positivity: " << (positive ? "true" : "false") << "\n";
  for (int i : targets) {
    auto besag = crf::reduction_family(field, i, guard);
    auto rest = crf::SiteSet::full(field.site_count()).without(i);
    auto si = crf::si_family(field, i, rest, guard);
    auto mi = crf::mi_family(field, i, guard);
    auto es = crf::es_family(field, i, guard);
    std::cout << "site " << field.site_names()[i] << ":\n"
              << "  besag: "
              << (besag.well_defined ? "well-defined" : "ambiguous")
              << " minimal=" << family_text(field, besag.minimal_sets) << "\n"
              << "  SI(i,i^c): " << family_text(field, si.member_sets) << "\n"
              << "  MI: " << family_text(field, mi.member_sets) << "\n"
              << "  ES: " << family_text(field, es.family.member_sets) << "\n";
    std::cout << "  neighbor: ";
    if (es.ambiguous)
      std::cout << "ambiguous";
    else if (es.neighbor && es.neighbor->empty())
      std::cout << "empty";
    else if (es.neighbor)
      std::cout << family_text(field, {*es.neighbor});
    else
      std::cout << "empty";
    std::cout << "\n";
  }
  return 0;
}

int run_check(const std::string& input, const std::string& format, bool as_json,
              int guard) {
  crf::JointField field = load_field(input, format);
  crf::TheoremReport report = crf::check_theorems(field, guard);
  if (as_json) {
    std::cout << crf::theorem_report_json(field, report).dump() << "\n";
  } else {
    for (const auto& e : report.entries)
      std::cout << crf::property_name(e.property) << ": "
                << (e.pass ? "pass" : "FAIL (" +
                                          std::to_string(e.witnesses.size()) +
                                          " witnesses)")
                << "\n";
  }
  return report.all_pass() ? 0 : 2;
}

int run_mine(const std::string& property, int max_sites, int max_alphabet,
             const std::string& grid, int random_count, std::uint64_t seed,
             std::size_t cap) {
  crf::PropertyId id = crf::property_id(property);
  crf::EnumerationBounds bounds = crf::default_bounds(id);
  if (max_sites > 0) bounds.max_sites = max_sites;
  if (max_alphabet > 0) bounds.max_alphabet = max_alphabet;
  if (!grid.empty()) {
    bounds.weight_grid.clear();
    std::stringstream ss(grid);
    std::string tok;
    while (std::getline(ss, tok, ','))
      bounds.weight_grid.push_back(std::stol(tok));
  }
  if (random_count >= 0) bounds.random_count = random_count;
  bounds.seed = seed;

  crf::MineResult result = crf::mine(id, bounds, cap);
  for (const auto& w : result.witnesses)
    std::cout << crf::witness_json(w).dump() << "\n";
  std::cerr << "scanned " << result.fields_scanned << " fields, "
            << result.witnesses.size() << " witnesses\n";
  return 0;
}

int run_query(const std::string& input, const std::string& format,
              const std::string& target, const std::string& given,
              const std::string& coarse, bool as_json) {
  crf::JointField field = load_field(input, format);
  int i = field.site_index(target);
  crf::PointAssignment point = crf::parse_point(field, given);
  crf::CoarseConstraint constraint = crf::parse_coarse(field, coarse);
  auto dist = crf::coarse_conditional(field, i, point, constraint);
  if (as_json) {
    crf::Json out;
    out["target"] = target;
    if (!dist) {
      out["distribution"] = "undefined";
    } else {
      crf::Json entries = crf::Json::array();
      for (int l = 0; l < field.alphabet_size(i); ++l)
        entries.push_back(
            crf::Json{{"label", field.alphabets()[i][l]},
                      {"p", crf::rational_fraction((*dist)[l])}});
      out["distribution"] = entries;
    }
    std::cout << out.dump() << "\n";
    return 0;
  }
  if (!dist) {
    std::cout << "undefined\n";
    return 0;
  }
  for (int l = 0; l < field.alphabet_size(i); ++l) {
    if (l) std::cout << ", ";
    std::cout << "P(" << target << "=" << field.alphabets()[i][l]
              << ")=" << crf::rational_text((*dist)[l]);
  }
  std::cout << "\n";
  return 0;
}

int run_fixtures(const std::string& name, int coins) {
  crf::Fixture fx = crf::builtin_fixture(name, coins);
  std::cout << crf::field_json(fx.field).dump() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact conditional-structure analysis of finite categorical "
               "random fields"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  std::string input, format, property, grid, target, given, coarse, name;
  std::vector<std::string> sites;
  bool as_json = false, as_text = false;
  int guard = crf::kDefaultLatticeGuard;
  int max_sites = 0, max_alphabet = 0, random_count = -1, coins = 3;
  std::uint64_t seed = 0;
  std::size_t cap = 25;

  auto* analyze = app.add_subcommand("analyze", "Per-site structure report");
  analyze->add_option("--input", input, "field file, or - for stdin")
      ->required();
  analyze->add_option("--format", format, "csv or json");
  analyze->add_option("--site", sites, "restrict to named sites");
  analyze->add_flag("--json", as_json, "JSON report");
  analyze->add_flag("--text", as_text, "text report (default)");
  analyze->add_option("--guard", guard, "lattice-size guard");

  auto* check = app.add_subcommand("check", "Run every MustHold theorem");
  check->add_option("--input", input)->required();
  check->add_option("--format", format);
  check->add_flag("--json", as_json);
  check->add_option("--guard", guard);

  auto* mine = app.add_subcommand("mine", "Search fields for property witnesses");
  mine->add_option("--property", property, "property id, e.g. TWO_AGENTS")
      ->required();
  mine->add_option("--max-sites", max_sites);
  mine->add_option("--max-alphabet", max_alphabet);
  mine->add_option("--grid", grid, "weight grid, e.g. 0,1,2");
  mine->add_option("--random", random_count, "seeded random fields");
  mine->add_option("--seed", seed);
  mine->add_option("--cap", cap, "witness cap");

  auto* query = app.add_subcommand("query", "One conditional distribution");
  query->add_option("--input", input)->required();
  query->add_option("--format", format);
  query->add_option("--target", target)->required();
  query->add_option("--given", given, "NAME=LABEL, comma separated");
  query->add_option("--given-coarse", coarse, "NAME∈{L1,L2}, comma separated");
  query->add_flag("--json", as_json);

  auto* fixtures = app.add_subcommand("fixtures", "Print a built-in fixture");
  fixtures->add_option("--name", name, "TABLE1|TABLE2|UNIFORM8|COPY|CHAIN|COINS")
      ->required();
  fixtures->add_option("--coins", coins, "site count for COINS");

  CLI11_PARSE(app, argc, argv);

  try {
    if (analyze->parsed())
      return run_analyze(input, format, sites, as_json && !as_text, guard);
    if (check->parsed()) return run_check(input, format, as_json, guard);
    if (mine->parsed())
      return run_mine(property, max_sites, max_alphabet, grid, random_count,
                      seed, cap);
    if (query->parsed())
      return run_query(input, format, target, given, coarse, as_json);
    if (fixtures->parsed()) return run_fixtures(name, coins);
  } catch (const crf::Error& e) {
    std::cerr << e.what() << "\n";
    return e.code() == crf::Errc::InstanceTooLarge ? 3 : 1;
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return 1;
  }
  return 1;
}
