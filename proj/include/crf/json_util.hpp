#pragma once

#include <nlohmann/json.hpp>

#include "crf/field.hpp"
#include "crf/site_set.hpp"

namespace crf {

// Ordered JSON everywhere so serialized output is byte-deterministic.
using Json = nlohmann::ordered_json;

Json event_json(const JointField& f, const Event& e);
Event event_from_json(const JointField& f, const Json& j);

Json siteset_json(const JointField& f, SiteSet s);
SiteSet siteset_from_json(const JointField& f, const Json& j);

Json assignment_json(const JointField& f, std::uint64_t code);
Json scope_assignment_json(const JointField& f, SiteSet scope,
                           std::uint64_t code);

}  // namespace crf
