#include "cinf/serialize.hpp"

#include "cinf/errors.hpp"
#include "cinf/parser.hpp"

namespace cinf {

namespace {

Rational rational_from_json(const json& j) {
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (!j.is_string()) throw Error(ErrorCode::Malformed, "expected a rational, got " + j.dump());
  auto q = parse_rational(j.get<std::string>());
  if (!q) throw Error(ErrorCode::Malformed, "malformed rational " + j.dump());
  return *q;
}

}  // namespace

json point_to_json(const Point& p) {
  json j = json::object();
  for (const auto& [v, q] : p) j[v] = to_string(q);
  return j;
}

Point point_from_json(const json& j) {
  if (!j.is_object()) throw Error(ErrorCode::Malformed, "a point is an object of coordinates");
  Point p;
  for (const auto& [v, q] : j.items()) p.emplace(v, rational_from_json(q));
  return p;
}

json box_to_json(const Box& b) {
  json j = json::object();
  for (const auto& [v, r] : b.ranges()) j[v] = json::array({to_string(r.lo), to_string(r.hi)});
  return j;
}

Box box_from_json(const json& j) {
  if (!j.is_object()) throw Error(ErrorCode::Malformed, "a box is an object of ranges");
  std::map<std::string, Range> ranges;
  for (const auto& [v, r] : j.items()) {
    if (!r.is_array() || r.size() != 2)
      throw Error(ErrorCode::Malformed, "range of " + v + " must be [lo, hi]");
    Range range{rational_from_json(r[0]), rational_from_json(r[1])};
    if (range.lo > range.hi) throw Error(ErrorCode::Malformed, "range of " + v + " is empty");
    ranges.emplace(v, range);
  }
  return Box(std::move(ranges));
}

json term_to_json(const Term& t) { return to_sexpr(t); }

Term term_from_json(const json& j) {
  if (!j.is_string()) throw Error(ErrorCode::Malformed, "a term is a string, got " + j.dump());
  return parse_term(j.get<std::string>());
}

json scope_to_json(const ObligationScope& s) {
  json j{{"kind", to_string(s.kind)}};
  if (s.region) j["region"] = box_to_json(*s.region);
  if (!s.hypothesis.empty()) j["hypothesis"] = s.hypothesis;
  return j;
}

json obligation_to_json(const Obligation& o) {
  json scopes = json::array();
  for (const auto& s : o.scopes) scopes.push_back(scope_to_json(s));
  return {{"id", o.id},
          {"subject", term_to_json(o.subject)},
          {"predicate", "ArgStrictlyPositive"},
          {"status", to_string(o.status)},
          {"reason", o.reason},
          {"scopes", scopes}};
}

json obligations_to_json(const Term& t) { return obligations_to_json(std::vector<Term>{t}); }

json obligations_to_json(const std::vector<Term>& ts) {
  std::map<ObligationId, Obligation> seen;
  for (const auto& t : ts)
    for (auto& o : reachable_obligations(t)) seen.emplace(o.id, std::move(o));
  json out = json::array();
  for (const auto& [_, o] : seen) out.push_back(obligation_to_json(o));
  return out;
}

std::string canonical_dump(const json& j) { return j.dump(2) + "\n"; }

void check_version(const json& j) {
  if (!j.is_object() || !j.contains("v"))
    throw Error(ErrorCode::Malformed, "document has no \"v\" field");
  if (j["v"] != kSchemaVersion)
    throw Error(ErrorCode::Malformed, "unsupported schema version " + j["v"].dump());
}

}  // namespace cinf
