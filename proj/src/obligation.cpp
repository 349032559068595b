#include "cinf/obligation.hpp"

#include <mutex>
#include <unordered_set>

#include "cinf/errors.hpp"
#include "cinf/polynomial.hpp"
#include "cinf/term_calculus.hpp"

namespace cinf {

const char* to_string(ObligationStatus s) {
  switch (s) {
    case ObligationStatus::Pending: return "Pending";
    case ObligationStatus::Discharged: return "Discharged";
    case ObligationStatus::Assumed: return "Assumed";
  }
  return "?";
}

const char* to_string(ScopeKind s) {
  switch (s) {
    case ScopeKind::Global: return "Global";
    case ScopeKind::OnRegion: return "OnRegion";
    case ScopeKind::Conditional: return "Conditional";
  }
  return "?";
}

bool ObligationScope::covers(const Box& b) const {
  if (!region) return true;
  // Only variables the region constrains matter; others are free.
  for (const auto& [v, r] : region->ranges()) {
    if (!b.has(v)) continue;
    const Range& inner = b.range(v);
    if (inner.lo < r.lo || inner.hi > r.hi) return false;
  }
  return true;
}

bool Obligation::covers(const Box& b) const {
  if (status == ObligationStatus::Pending) return false;
  for (const auto& s : scopes)
    if (s.covers(b)) return true;
  return false;
}

bool Obligation::global() const {
  if (status == ObligationStatus::Pending) return false;
  for (const auto& s : scopes)
    if (!s.region) return true;
  return false;
}

std::string PositivityHypothesis::describe() const {
  if (kind == Kind::Tietze)
    return to_infix(subject) + " > 0 on Z(" + to_infix(witness) + ")";
  return to_infix(subject) + " != 0 on Z(" + to_infix(witness) + ")";
}

PositivityHypothesis PositivityHypothesis::make(Kind kind, Term subject, Term witness,
                                                ObligationScope scope) {
  PositivityHypothesis h{kind, std::move(subject), std::move(witness), std::move(scope), {}};
  if (kind == Kind::NonVanishing) {
    h.positives = {normalize(add(pow(h.subject, 2), pow(h.witness, 2)))};
  } else {
    Term radicand = add(pow(h.subject, 2), pow(h.witness, 4));
    Term extension = mul(constant(Rational(1, 2)), add(h.subject, psqrt(radicand)));
    h.positives = {normalize(radicand), normalize(extension)};
  }
  return h;
}

ObligationRegistry& ObligationRegistry::global() {
  static ObligationRegistry registry;
  return registry;
}

namespace {

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h & 0x7fffffffffffULL;  // keep ids JSON-safe
}

}  // namespace

ObligationId ObligationRegistry::obtain(const Term& subject) {
  Term normal = normalize(subject);
  std::string key = to_sexpr(normal);
  {
    std::shared_lock lock(mu_);
    if (auto it = by_key_.find(key); it != by_key_.end()) return it->second;
  }
  Discharge d = discharge_global_positivity(normal);
  std::unique_lock lock(mu_);
  if (auto it = by_key_.find(key); it != by_key_.end()) return it->second;
  ObligationId id = fnv1a(key);
  while (id == 0 || by_id_.count(id)) id = (id + 1) & 0x7fffffffffffULL;
  Obligation ob;
  ob.id = id;
  ob.subject = normal;
  if (d.discharged) {
    ob.status = ObligationStatus::Discharged;
    ob.reason = d.reason;
    ob.scopes.push_back(d.scope);
  }
  by_id_.emplace(id, std::move(ob));
  by_key_.emplace(std::move(key), id);
  return id;
}

Obligation ObligationRegistry::get(ObligationId id) const {
  std::shared_lock lock(mu_);
  auto it = by_id_.find(id);
  if (it == by_id_.end())
    throw Error(ErrorCode::Malformed, "unregistered obligation " + std::to_string(id));
  return it->second;
}

bool ObligationRegistry::covers(ObligationId id, const Box& b) const {
  std::shared_lock lock(mu_);
  auto it = by_id_.find(id);
  return it != by_id_.end() && it->second.covers(b);
}

void ObligationRegistry::discharge(ObligationId id, const std::string& reason,
                                   ObligationScope scope) {
  std::unique_lock lock(mu_);
  auto it = by_id_.find(id);
  if (it == by_id_.end())
    throw Error(ErrorCode::Malformed, "unregistered obligation " + std::to_string(id));
  Obligation& ob = it->second;
  if (ob.status != ObligationStatus::Discharged) {
    ob.status = ObligationStatus::Discharged;
    ob.reason = reason;
  }
  ob.scopes.push_back(std::move(scope));
}

void ObligationRegistry::assume(ObligationId id, ObligationScope scope) {
  std::unique_lock lock(mu_);
  auto it = by_id_.find(id);
  if (it == by_id_.end())
    throw Error(ErrorCode::Malformed, "unregistered obligation " + std::to_string(id));
  Obligation& ob = it->second;
  if (ob.status == ObligationStatus::Pending) {
    ob.status = ObligationStatus::Assumed;
    ob.reason = "assumed";
  }
  ob.scopes.push_back(std::move(scope));
}

void ObligationRegistry::add_hypothesis(PositivityHypothesis h) {
  std::vector<Obligation> pending;
  {
    std::unique_lock lock(mu_);
    hypotheses_.push_back(h);
    for (const auto& [_, ob] : by_id_)
      if (ob.status == ObligationStatus::Pending) pending.push_back(ob);
  }
  for (const auto& ob : pending)
    for (const auto& p : h.positives)
      if (positive_multiple(ob.subject, p)) {
        discharge(ob.id, h.kind == PositivityHypothesis::Kind::Tietze ? "tietze-extension"
                                                                      : "nonvanishing-on-zeroset",
                  ObligationScope::conditional(h.describe(), h.scope.region));
        break;
      }
}

std::vector<PositivityHypothesis> ObligationRegistry::hypotheses() const {
  std::shared_lock lock(mu_);
  return hypotheses_;
}

std::vector<Obligation> ObligationRegistry::snapshot() const {
  std::shared_lock lock(mu_);
  std::vector<Obligation> out;
  out.reserve(by_id_.size());
  for (const auto& [_, ob] : by_id_) out.push_back(ob);
  return out;
}

std::vector<Obligation> reachable_obligations(const Term& t) {
  std::vector<Obligation> out;
  std::unordered_set<ObligationId> seen;
  std::unordered_set<const Node*> visited;
  std::vector<Term> stack{t};
  while (!stack.empty()) {
    Term cur = stack.back();
    stack.pop_back();
    if (!visited.insert(cur.id()).second) continue;
    if ((cur.kind() == Kind::PSqrt || cur.kind() == Kind::PInv) &&
        seen.insert(cur.obligation()).second)
      out.push_back(ObligationRegistry::global().get(cur.obligation()));
    for (auto it = cur.children().rbegin(); it != cur.children().rend(); ++it)
      stack.push_back(*it);
  }
  return out;
}

}  // namespace cinf
