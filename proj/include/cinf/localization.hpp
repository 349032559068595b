#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "cinf/certificates.hpp"
#include "cinf/smooth_ring.hpp"
#include "cinf/verifier.hpp"

namespace cinf {

/// A{S^-1} presented as C-infinity(R^(E + y)) / (I + <y_j s_j - 1>).
struct LocalizedRing {
  Presentation base;
  std::vector<Term> inverted;
  std::vector<std::string> fresh;
  Presentation extended;
};

LocalizedRing localize(const Presentation& A, const std::vector<Term>& S);

/// eta(s_j) * y_j == 1 modulo the extended ideal, by cofactors.
Certificate eta_inverse_certificate(const LocalizedRing& L, std::size_t j);

/// Proved means the localization is the zero ring over `region` (a box over
/// the base variables); Refuted carries a point of the extended zeroset.
Verdict detect_trivial(const LocalizedRing& L, const Box& region,
                       const VerifierOptions& options = {});

/// psi lies in the saturation of phi, i.e. Z(psi) is contained in Z(phi).
Verdict saturation_contains(const Term& phi, const Term& psi, const Box& region,
                            const VerifierOptions& options = {});

/// a lies in the C-infinity radical of I, i.e. Z(sigma(I)) is contained in Z(a).
Verdict radical_member(const Term& a, const Ideal& I, const Box& region,
                       const VerifierOptions& options = {});

nlohmann::json to_json(const LocalizedRing& L);

}  // namespace cinf
