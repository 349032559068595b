#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "cinf/box.hpp"
#include "cinf/obligation.hpp"
#include "cinf/term.hpp"

namespace cinf {

using nlohmann::json;

/// Schema version carried by every document.
inline constexpr int kSchemaVersion = 1;

json point_to_json(const Point& p);
Point point_from_json(const json& j);

/// {"x": ["lo", "hi"], ...}
json box_to_json(const Box& b);
Box box_from_json(const json& j);

json term_to_json(const Term& t);
Term term_from_json(const json& j);

json scope_to_json(const ObligationScope& s);
json obligation_to_json(const Obligation& o);
json obligations_to_json(const Term& t);
json obligations_to_json(const std::vector<Term>& ts);

/// Sorted keys, two-space indent, trailing newline.
std::string canonical_dump(const json& j);

/// Throws Malformed when the "v" field is missing or unsupported.
void check_version(const json& j);

}  // namespace cinf
