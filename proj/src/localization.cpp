#include "cinf/localization.hpp"

#include "cinf/errors.hpp"
#include "cinf/serialize.hpp"
#include "cinf/term_calculus.hpp"

namespace cinf {

LocalizedRing localize(const Presentation& A, const std::vector<Term>& S) {
  LocalizedRing L;
  L.base = A;
  L.inverted = S;
  std::set<std::string> taken(A.variables.begin(), A.variables.end());
  for (const auto& g : A.ideal.generators())
    for (const auto& v : support(g)) taken.insert(v);
  for (const auto& s : S)
    for (const auto& v : support(s)) taken.insert(v);
  FreeRing ring(taken);

  std::vector<Term> gens = A.ideal.generators();
  L.extended.variables = A.variables;
  for (const auto& s : S) {
    std::string y = ring.fresh("y");
    ring.adjoin(y);
    L.fresh.push_back(y);
    L.extended.variables.push_back(y);
    gens.push_back(sub(mul(var(y), s), constant(1)));
  }
  L.extended.ideal = Ideal(std::move(gens));
  return L;
}

Certificate eta_inverse_certificate(const LocalizedRing& L, std::size_t j) {
  if (j >= L.inverted.size()) throw Error(ErrorCode::Malformed, "no inverted element " + std::to_string(j));
  Term lhs = mul(L.inverted[j], var(L.fresh[j]));
  Box region;
  return cert_equal(lhs, constant(1), L.extended.ideal, region);
}

namespace {

Verdict verdict_of(Outcome o, std::string reason, const Box& region) {
  Verdict v;
  v.outcome = o;
  v.reason = std::move(reason);
  v.scope = ObligationScope::on_region(region);
  return v;
}

}  // namespace

Verdict detect_trivial(const LocalizedRing& L, const Box& region, const VerifierOptions& options) {
  for (const auto& g : L.extended.ideal.generators()) {
    Term n = normalize(g);
    if (n.is_const() && !n.is_zero()) {
      Verdict v = verdict_of(Outcome::Proved, "the ideal contains the unit " + to_infix(n), region);
      v.scope = ObligationScope::global();
      return v;
    }
  }
  if (L.inverted.empty())
    return zeroset_included(L.base.ideal.sigma_structured(), constant(1), region, options);

  // Every piece of the base zeroset forces some inverted element to vanish.
  if (auto pieces = decompose_zeroset(L.base.ideal.sigma_structured())) {
    bool all_killed = !pieces->empty();
    for (const auto& piece : *pieces) {
      bool killed = false;
      if (piece.residual.empty())
        for (const auto& s : L.inverted)
          killed = killed || identically_zero(substitute(s, piece.assignment));
      all_killed = all_killed && killed;
    }
    if (all_killed || pieces->empty()) {
      Verdict v = verdict_of(Outcome::Proved,
                             pieces->empty() ? "the base zeroset is empty"
                                             : "an inverted element vanishes on the base zeroset",
                             region);
      v.scope = ObligationScope::global();
      return v;
    }
  }

  std::vector<Term> factors = L.inverted;
  Term product = mul(std::move(factors));
  Verdict v = zeroset_included(L.base.ideal.sigma_structured(), product, region, options);
  if (v.proved()) {
    v.reason = "the inverted elements vanish jointly on the base zeroset";
    return v;
  }
  if (v.refuted()) {
    Point w = *v.witness;
    bool exact = true;
    for (std::size_t j = 0; j < L.inverted.size(); ++j) {
      auto s = exact_value(L.inverted[j], w);
      if (s && *s != 0) {
        w[L.fresh[j]] = Rational(1) / *s;
      } else {
        exact = false;
      }
    }
    v.witness = w;
    v.reason = exact ? "point of the extended zeroset"
                     : "inverted elements are nonzero here; 1/s has no exact rational value";
  }
  return v;
}

Verdict saturation_contains(const Term& phi, const Term& psi, const Box& region,
                            const VerifierOptions& options) {
  return zeroset_included(psi, phi, region, options);
}

Verdict radical_member(const Term& a, const Ideal& I, const Box& region,
                       const VerifierOptions& options) {
  return zeroset_included(I.sigma_structured(), a, region, options);
}

nlohmann::json to_json(const LocalizedRing& L) {
  json inverted = json::array();
  for (const auto& s : L.inverted) inverted.push_back(term_to_json(s));
  json j = to_json(L.extended);
  j["base"] = to_json(L.base);
  j["inverted"] = inverted;
  j["fresh"] = L.fresh;
  return j;
}

}  // namespace cinf
