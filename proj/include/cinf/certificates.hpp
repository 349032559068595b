#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "cinf/box.hpp"
#include "cinf/smooth_ring.hpp"
#include "cinf/term.hpp"
#include "cinf/verifier.hpp"

namespace cinf {

enum class CertificateKind { Order, Inverse, Equality, Square };
const char* to_string(CertificateKind k);

/// element * cofactor, where element lies in the ideal.
struct IdealTerm {
  Term element;
  Term cofactor;
};

/// A checkable identity `lhs == sum element_i * cofactor_i` together with the
/// zeroset verdict that justified the construction.
struct Certificate {
  CertificateKind kind = CertificateKind::Order;
  Term f;
  Term g;                          // Order: f < g; Equality: f == g
  Ideal ideal;
  Box region;
  Term witness;                    // the ideal element phi
  std::optional<Term> unit;        // Order, Square: u
  std::optional<Term> unit_inverse;
  std::optional<Term> inverse;     // Inverse: f * inverse == 1 mod I
  Term lhs;
  std::vector<IdealTerm> combination;
  std::string route;
  Verdict verdict;
  bool assumed = false;

  /// lhs - sum element*cofactor; vanishes identically for a valid certificate.
  Term residual() const;
  /// First cofactor, or 0.
  Term cofactor() const;
  /// Rational-function skeleton of the residual reduces to 0. Radical-route
  /// equalities carry no identity and report true.
  bool symbolic_check() const;
};

struct CertOptions {
  VerifierOptions verifier;
  /// Accept Unknown verdicts by marking the new obligations Assumed.
  bool assume_global = false;
};

Certificate cert_invertible(const Term& f, const Ideal& I, std::optional<Term> phi,
                            const Box& region, const CertOptions& opt = {});
Certificate cert_order(const Term& f, const Term& g, const Ideal& I, std::optional<Term> phi,
                       const Box& region, const CertOptions& opt = {});
Certificate cert_equal(const Term& f, const Term& g, const Ideal& I, const Box& region,
                       const CertOptions& opt = {});
Certificate cert_square(const Term& f, const Ideal& I, std::optional<Term> psi,
                        const Box& region, const CertOptions& opt = {});

Certificate order_transitive_compose(const Certificate& ab, const Certificate& bc,
                                     const CertOptions& opt = {});

struct AddConst {
  Term t;
};
struct MulPositive {
  Certificate square;
};
Certificate order_compat_transform(const Certificate& c, const AddConst& mode);
Certificate order_compat_transform(const Certificate& c, const MulPositive& mode);

struct UnitSign {
  bool positive = true;
  Certificate square;  // for f when positive, for -f otherwise
};
UnitSign sign_of_unit(const Term& f, const Box& region, const CertOptions& opt = {});

/// f = u^2 + sum h_i^2 with u a unit (u = 1 when absent).
Certificate sos_unit(const Term& f, const Ideal& I, const Box& region,
                     std::optional<Term> u = std::nullopt, const CertOptions& opt = {});

nlohmann::json to_json(const Certificate& c);

}  // namespace cinf
