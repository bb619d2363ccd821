#include "crf/json_util.hpp"

#include "crf/error.hpp"

namespace crf {

Json assignment_json(const JointField& f, std::uint64_t code) {
  Json out = Json::array();
  auto digits = f.decode(code);
  for (int i = 0; i < f.site_count(); ++i)
    out.push_back(f.alphabets()[i][digits[i]]);
  return out;
}

Json scope_assignment_json(const JointField& f, SiteSet scope,
                           std::uint64_t code) {
  Json out = Json::array();
  auto sites = scope.members();
  auto digits = f.scope_decode(scope, code);
  for (std::size_t k = 0; k < sites.size(); ++k)
    out.push_back(f.alphabets()[sites[k]][digits[k]]);
  return out;
}

Json event_json(const JointField& f, const Event& e) {
  Json out = Json::array();
  for (std::uint64_t c : e.codes) out.push_back(assignment_json(f, c));
  return out;
}

Event event_from_json(const JointField& f, const Json& j) {
  std::vector<std::vector<std::string>> rows;
  for (const auto& row : j)
    rows.push_back(row.get<std::vector<std::string>>());
  return Event::from_assignments(f, rows);
}

Json siteset_json(const JointField& f, SiteSet s) {
  Json out = Json::array();
  for (int i : s.members()) out.push_back(f.site_names()[i]);
  return out;
}

SiteSet siteset_from_json(const JointField& f, const Json& j) {
  SiteSet s;
  for (const auto& name : j)
    s = s.with(f.site_index(name.get<std::string>()));
  return s;
}

}  // namespace crf
