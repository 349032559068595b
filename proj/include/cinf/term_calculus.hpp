#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cinf/box.hpp"
#include "cinf/interval.hpp"
#include "cinf/obligation.hpp"
#include "cinf/term.hpp"

namespace cinf {

enum class Tri { Yes, No, Unknown };
const char* to_string(Tri t);

/// Default escalation schedule for straddling enclosures.
inline const std::vector<mpfr_prec_t>& default_precisions() {
  static const std::vector<mpfr_prec_t> p{53, 113, 256};
  return p;
}

/// Outward-rounded enclosure of {t(x) : x in b}.
/// Throws PendingObligation when a guarded argument is not known positive on
/// b, ObligationViolated when an exact point of b makes it nonpositive.
Interval eval_interval(const Term& t, const Box& b, mpfr_prec_t prec = 53);
Interval eval_at(const Term& t, const Point& x, mpfr_prec_t prec = 53);

/// Exact rational value at x when every node folds exactly (polynomial
/// arithmetic, primitives at 0, bumps outside their box, ...).
std::optional<Rational> exact_value(const Term& t, const Point& x);

/// Sound three-valued test of t(x) == 0.
Tri exact_zero_at(const Term& t, const Point& x);

/// Sign of t(x) in {-1, 0, 1}, or nullopt when undecided at the last precision.
std::optional<int> sign_at(const Term& t, const Point& x,
                           const std::vector<mpfr_prec_t>& precisions = default_precisions());

/// Partial derivative. Guarded primitives reuse their argument as the
/// obligation subject: d psqrt(X) = X' psqrt(X) pinv(X) / 2,
/// d pinv(X) = -X' pinv(X)^2.
Term differentiate(const Term& t, const std::string& v);

/// Canonical form: flattened sorted sums and products, rational constant
/// folding, psqrt(X)^2 -> X. Idempotent and semantics-preserving.
Term normalize(const Term& t);
bool identically_zero(const Term& t);

/// Replaces variables with exact values. Bumps fold their fixed axes into
/// exp(-1/q) factors.
Term substitute(const Term& t, const Point& values);
Term substitute(const Term& t, const std::map<std::string, Term>& values);

struct Discharge {
  bool discharged = false;
  std::string reason;
  ObligationScope scope;
};

/// Structural proof that t > 0 everywhere (or under a registered hypothesis).
Discharge discharge_global_positivity(const Term& t);

/// Structural proof that t >= 0 everywhere (squares, bumps, positives).
bool structurally_nonnegative(const Term& t);

}  // namespace cinf
