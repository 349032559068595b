#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <mpfr.h>
#include <nlohmann/json.hpp>

#include "cinf/box.hpp"
#include "cinf/obligation.hpp"
#include "cinf/term.hpp"

namespace cinf {

/// One piece of a zeroset: fixed coordinates plus residual equations.
/// Z(phi) is the union of its pieces.
struct ZeroPiece {
  Point assignment;
  std::vector<Term> residual;
};

/// Splits Z(phi) into pieces using products (unions), sums of nonnegative
/// terms (intersections), affine roots and positive primitives. Returns
/// nullopt when the piece count would exceed `cap`.
std::optional<std::vector<ZeroPiece>> decompose_zeroset(const Term& phi, std::size_t cap = 64);

enum class Predicate { GreaterZero, NonZero, EqualsZero };
const char* to_string(Predicate p);

struct VerifierOptions {
  unsigned max_depth = 40;
  std::size_t cell_budget = 1000000;
  std::vector<mpfr_prec_t> precisions{53, 113, 256};
  unsigned workers = 1;
  unsigned lookahead = 4;
};

struct ZerosetQuery {
  Term constraint;
  Predicate predicate = Predicate::GreaterZero;
  Term subject;
  Box region;
  std::optional<Term> cofactor;  // EqualsZero: subject == cofactor * constraint
  VerifierOptions options;
};

enum class Outcome { Proved, Refuted, Unknown };
const char* to_string(Outcome o);

struct VerifierStats {
  std::size_t cells = 0;
  unsigned max_depth = 0;
  std::size_t pieces = 0;
};

struct Verdict {
  Outcome outcome = Outcome::Unknown;
  std::optional<Point> witness;
  std::string reason;
  ObligationScope scope;
  VerifierStats stats;

  bool proved() const { return outcome == Outcome::Proved; }
  bool refuted() const { return outcome == Outcome::Refuted; }
};

/// Decides "for all x in Z(constraint) within region: predicate(subject)(x)".
Verdict prove_on_zeroset(const ZerosetQuery& q);

/// Z(b) within region is contained in Z(a).
Verdict zeroset_included(const Term& b, const Term& a, const Box& region,
                         const VerifierOptions& options = {});

/// Re-checks a refutation witness at escalated precision.
bool witness_valid(const ZerosetQuery& q, const Point& witness);

nlohmann::json to_json(const Verdict& v);
nlohmann::json to_json(const ZerosetQuery& q, const Verdict& v);

}  // namespace cinf
