#pragma once

#include <optional>
#include <shared_mutex>
#include <string>
#include <unordered_map>
#include <vector>

#include "cinf/box.hpp"
#include "cinf/term.hpp"

namespace cinf {

enum class ObligationStatus { Pending, Discharged, Assumed };
enum class ScopeKind { Global, OnRegion, Conditional };

const char* to_string(ObligationStatus s);
const char* to_string(ScopeKind s);

struct ObligationScope {
  ScopeKind kind = ScopeKind::Global;
  std::optional<Box> region;   // OnRegion, or a Conditional hypothesis verified on a region
  std::string hypothesis;      // Conditional

  static ObligationScope global() { return {}; }
  static ObligationScope on_region(const Box& b) { return {ScopeKind::OnRegion, b, {}}; }
  static ObligationScope conditional(std::string hypothesis, std::optional<Box> region) {
    return {ScopeKind::Conditional, std::move(region), std::move(hypothesis)};
  }
  /// True when the scope guarantees the obligation on every point of `b`.
  bool covers(const Box& b) const;
};

/// "subject > 0" guarding a PSqrt or PInv node.
struct Obligation {
  ObligationId id = 0;
  Term subject;
  ObligationStatus status = ObligationStatus::Pending;
  std::string reason;
  std::vector<ObligationScope> scopes;

  bool covers(const Box& b) const;
  bool global() const;
};

/// A verified fact that makes certain constructed subjects positive.
///  Tietze:       m > 0 on Z(witness)  ==>  m^2 + witness^4 > 0 and
///                (m + psqrt(m^2 + witness^4)) / 2 > 0.
///  NonVanishing: f != 0 on Z(witness) ==>  f^2 + witness^2 > 0.
struct PositivityHypothesis {
  enum class Kind { Tietze, NonVanishing };
  Kind kind;
  Term subject;   // m or f
  Term witness;
  ObligationScope scope;
  std::vector<Term> positives;  // normalized terms this hypothesis makes positive

  static PositivityHypothesis make(Kind kind, Term subject, Term witness, ObligationScope scope);
  std::string describe() const;
};

/// Process-wide, append-only registry of obligations and hypotheses.
/// Obligation ids are derived from the normalized subject, so equal subjects
/// share one obligation across terms and across runs.
class ObligationRegistry {
 public:
  static ObligationRegistry& global();

  ObligationId obtain(const Term& subject);
  Obligation get(ObligationId id) const;
  bool covers(ObligationId id, const Box& b) const;

  /// Status transitions only move away from Pending; scopes accumulate.
  void discharge(ObligationId id, const std::string& reason, ObligationScope scope);
  void assume(ObligationId id, ObligationScope scope);

  void add_hypothesis(PositivityHypothesis h);
  std::vector<PositivityHypothesis> hypotheses() const;

  std::vector<Obligation> snapshot() const;

 private:
  ObligationRegistry() = default;

  mutable std::shared_mutex mu_;
  std::unordered_map<ObligationId, Obligation> by_id_;
  std::unordered_map<std::string, ObligationId> by_key_;
  std::vector<PositivityHypothesis> hypotheses_;
};

/// Obligations reachable from t (deduplicated, in first-visit order).
std::vector<Obligation> reachable_obligations(const Term& t);

}  // namespace cinf
