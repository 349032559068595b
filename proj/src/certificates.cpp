#include "cinf/certificates.hpp"

#include "cinf/errors.hpp"
#include "cinf/obligation.hpp"
#include "cinf/polynomial.hpp"
#include "cinf/serialize.hpp"
#include "cinf/term_calculus.hpp"

namespace cinf {

const char* to_string(CertificateKind k) {
  switch (k) {
    case CertificateKind::Order: return "order";
    case CertificateKind::Inverse: return "inverse";
    case CertificateKind::Equality: return "equality";
    case CertificateKind::Square: return "square";
  }
  return "?";
}

Term Certificate::residual() const {
  std::vector<Term> parts;
  for (const auto& c : combination) parts.push_back(mul(c.element, c.cofactor));
  if (parts.empty()) return lhs;
  return sub(lhs, add(std::move(parts)));
}

Term Certificate::cofactor() const {
  return combination.empty() ? constant(0) : combination.front().cofactor;
}

bool Certificate::symbolic_check() const {
  if (kind == CertificateKind::Equality && route == "radical") return true;
  return skeleton_is_zero(residual());
}

namespace {

struct WitnessChoice {
  Term witness;
  Term constraint;
};

WitnessChoice choose_witness(const Ideal& I, const std::optional<Term>& phi) {
  if (!phi) return {I.sigma(), I.sigma_structured()};
  if (!I.contains_syntactically(*phi))
    throw Error(ErrorCode::Malformed,
                "witness " + to_infix(*phi) + " is not a recognizable element of " + I.str());
  return {*phi, *phi};
}

bool globally_positive(const Term& t) {
  Discharge d = discharge_global_positivity(t);
  return d.discharged && d.scope.kind == ScopeKind::Global;
}

Verdict structural_verdict(std::string reason) {
  Verdict v;
  v.outcome = Outcome::Proved;
  v.reason = std::move(reason);
  v.scope = ObligationScope::global();
  return v;
}

/// Turns a non-Proved verdict into the matching error unless assumptions are allowed.
bool settle(const Verdict& v, ErrorCode refuted, const std::string& what, const CertOptions& opt) {
  if (v.refuted())
    throw Error(refuted, what + " fails at " + to_string(*v.witness), v.witness);
  if (v.outcome == Outcome::Unknown) {
    if (!opt.assume_global)
      throw Error(ErrorCode::UnknownVerdict, what + " is undecided: " + v.reason);
    return true;
  }
  return false;
}

void assume_pending(const std::vector<Term>& terms) {
  auto& reg = ObligationRegistry::global();
  for (const auto& t : terms)
    for (const auto& ob : reachable_obligations(t))
      if (ob.status == ObligationStatus::Pending) reg.assume(ob.id, ObligationScope::global());
}

void discharge_pending(const std::vector<Term>& terms, const Box& region) {
  auto& reg = ObligationRegistry::global();
  for (const auto& t : terms)
    for (const auto& ob : reachable_obligations(t))
      if (ob.status == ObligationStatus::Pending)
        reg.discharge(ob.id, "verified-on-region", ObligationScope::on_region(region));
}

Term square_root_term(const Term& m) {
  if (m.is_const())
    if (auto r = exact_sqrt(m.value())) return constant(*r);
  return psqrt(m);
}

Term reciprocal_term(const Term& u) {
  if (u.is_const() && u.value() > 0) return constant(Rational(1) / u.value());
  return pinv(u);
}

Term combine_witness(const Term& a, const Term& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  return add(pow(a, 2), pow(b, 2));
}

}  // namespace

Certificate cert_invertible(const Term& f, const Ideal& I, std::optional<Term> phi,
                            const Box& region, const CertOptions& opt) {
  auto [witness, constraint] = choose_witness(I, phi);
  Certificate c;
  c.kind = CertificateKind::Inverse;
  c.f = f;
  c.g = constant(1);
  c.ideal = I;
  c.region = region;
  c.witness = witness;

  if (globally_positive(f)) {
    c.inverse = pinv(f);
    c.lhs = sub(mul(f, *c.inverse), constant(1));
    c.route = "globally-positive";
    c.verdict = structural_verdict("structurally positive");
    return c;
  }

  ZerosetQuery q{constraint, Predicate::NonZero, f, region, std::nullopt, opt.verifier};
  c.verdict = prove_on_zeroset(q);
  c.assumed = settle(c.verdict, ErrorCode::NotInvertibleOnZeroset,
                     to_infix(f) + " != 0 on Z(" + to_infix(witness) + ")", opt);
  if (c.verdict.proved())
    ObligationRegistry::global().add_hypothesis(PositivityHypothesis::make(
        PositivityHypothesis::Kind::NonVanishing, f, witness,
        ObligationScope::conditional("", region)));

  Term denom = witness.is_zero() ? pow(f, 2) : add(pow(f, 2), pow(witness, 2));
  Term inv = pinv(denom);
  c.inverse = mul(f, inv);
  c.lhs = sub(mul(f, *c.inverse), constant(1));
  if (!witness.is_zero()) c.combination.push_back({witness, neg(mul(witness, inv))});
  c.route = "nonvanishing-on-zeroset";
  if (c.assumed) assume_pending({*c.inverse, c.cofactor()});
  return c;
}

Certificate cert_order(const Term& f, const Term& g, const Ideal& I, std::optional<Term> phi,
                       const Box& region, const CertOptions& opt) {
  auto [witness, constraint] = choose_witness(I, phi);
  Certificate c;
  c.kind = CertificateKind::Order;
  c.f = f;
  c.g = g;
  c.ideal = I;
  c.region = region;
  c.witness = witness;
  Term m = normalize(sub(g, f));

  if (globally_positive(m)) {
    c.unit = square_root_term(m);
    c.unit_inverse = reciprocal_term(*c.unit);
    c.lhs = sub(sub(g, f), pow(*c.unit, 2));
    c.route = "globally-positive";
    c.verdict = structural_verdict("difference is structurally positive");
    return c;
  }

  ZerosetQuery q{constraint, Predicate::GreaterZero, m, region, std::nullopt, opt.verifier};
  c.verdict = prove_on_zeroset(q);
  c.assumed = settle(c.verdict, ErrorCode::OrderRefuted,
                     to_infix(f) + " < " + to_infix(g) + " on Z(" + to_infix(witness) + ")", opt);
  auto& reg = ObligationRegistry::global();

  if (witness.is_zero()) {
    if (c.verdict.proved())
      reg.discharge(reg.obtain(m), "verified-on-region", ObligationScope::on_region(region));
    c.unit = psqrt(m);
    c.route = "verified-positive";
  } else {
    if (c.verdict.proved())
      reg.add_hypothesis(PositivityHypothesis::make(PositivityHypothesis::Kind::Tietze, m,
                                                    witness,
                                                    ObligationScope::conditional("", region)));
    Term radicand = add(pow(m, 2), pow(witness, 4));
    Term extension = mul(constant(Rational(1, 2)), add(m, psqrt(radicand)));
    c.unit = psqrt(extension);
    c.combination.push_back(
        {witness, neg(mul(pow(witness, 3), pinv(mul(constant(4), extension))))});
    c.route = "tietze-extension";
  }
  c.unit_inverse = pinv(*c.unit);
  c.lhs = sub(sub(g, f), pow(*c.unit, 2));
  if (witness.is_zero() && c.verdict.proved()) discharge_pending({*c.unit_inverse}, region);
  if (c.assumed) assume_pending({*c.unit, *c.unit_inverse, c.cofactor()});
  return c;
}

Certificate cert_square(const Term& f, const Ideal& I, std::optional<Term> psi,
                        const Box& region, const CertOptions& opt) {
  Certificate c = cert_order(constant(0), f, I, std::move(psi), region, opt);
  c.kind = CertificateKind::Square;
  c.f = f;
  c.g = f;
  c.lhs = sub(f, pow(*c.unit, 2));
  return c;
}

namespace {

/// Splits p as a*v + b with v absent from a and b.
std::optional<std::pair<Poly, Poly>> split_linear(const Poly& p, const Term& v) {
  Poly a, b;
  for (const auto& [m, c] : p.terms()) {
    Monomial rest;
    unsigned power = 0;
    for (const auto& [atom, e] : m) {
      if (atom == v) power = e;
      else rest.push_back({atom, e});
    }
    if (power > 1) return std::nullopt;
    if (power == 1) a.add_term(rest, c);
    else b.add_term(m, c);
  }
  return std::make_pair(a, b);
}

/// When gen = a*v + b with a globally positive and d = alpha*v + beta with
/// alpha*b == beta*a, returns the cofactor alpha * pinv(a).
std::optional<Term> affine_cofactor(const Poly& d, const Term& gen) {
  Poly pg = to_poly(gen);
  for (const auto& name : support(gen)) {
    Term v = var(name);
    auto g_split = split_linear(pg, v);
    auto d_split = split_linear(d, v);
    if (!g_split || !d_split || g_split->first.is_zero()) continue;
    Term a = from_poly(g_split->first);
    if (!globally_positive(a)) continue;
    Term h = mul(from_poly(d_split->first), pinv(a));
    if (skeleton_is_zero(sub(from_poly(d), mul(h, gen)))) return h;
  }
  return std::nullopt;
}

}  // namespace

Certificate cert_equal(const Term& f, const Term& g, const Ideal& I, const Box& region,
                       const CertOptions& opt) {
  Certificate c;
  c.kind = CertificateKind::Equality;
  c.f = f;
  c.g = g;
  c.ideal = I;
  c.region = region;
  c.witness = I.sigma();
  c.lhs = sub(f, g);
  Term d = normalize(c.lhs);
  if (d.is_zero()) {
    c.route = "cofactors";
    c.verdict = structural_verdict("difference normalizes to 0");
    return c;
  }
  Poly pd = to_poly(d);
  for (const auto& gen : I.generators()) {
    if (auto h = divide_exact(pd, to_poly(gen))) {
      c.combination.push_back({gen, from_poly(*h)});
      c.witness = gen;
      c.route = "cofactors";
      c.verdict = structural_verdict("difference is a multiple of a generator");
      return c;
    }
  }
  for (const auto& gen : I.generators()) {
    if (auto h = affine_cofactor(pd, gen)) {
      c.combination.push_back({gen, *h});
      c.witness = gen;
      c.route = "cofactors";
      c.verdict = structural_verdict("difference is a multiple of a generator affine in one variable");
      return c;
    }
  }
  c.route = "radical";
  c.verdict = zeroset_included(I.sigma_structured(), c.lhs, region, opt.verifier);
  c.assumed = settle(c.verdict, ErrorCode::NotEqual,
                     to_infix(f) + " = " + to_infix(g) + " on Z(" + to_infix(I.sigma()) + ")",
                     opt);
  return c;
}

Certificate order_transitive_compose(const Certificate& ab, const Certificate& bc,
                                     const CertOptions& opt) {
  if (ab.ideal != bc.ideal)
    throw Error(ErrorCode::IdealMismatch,
                "cannot compose orders modulo " + ab.ideal.str() + " and " + bc.ideal.str());
  if (!identically_zero(sub(ab.g, bc.f)))
    throw Error(ErrorCode::ChainMismatch,
                to_infix(ab.g) + " and " + to_infix(bc.f) + " are not the same middle term");
  Term gamma = combine_witness(ab.witness, bc.witness);
  if (gamma.is_zero()) gamma = ab.ideal.sigma();
  return cert_order(ab.f, bc.g, ab.ideal, gamma, ab.region, opt);
}

Certificate order_compat_transform(const Certificate& c, const AddConst& mode) {
  if (c.kind != CertificateKind::Order)
    throw Error(ErrorCode::Malformed, "compatibility transforms apply to order certificates");
  Certificate out = c;
  out.f = add(c.f, mode.t);
  out.g = add(c.g, mode.t);
  out.lhs = sub(sub(out.g, out.f), pow(*c.unit, 2));
  out.route = c.route + "+shift";
  return out;
}

Certificate order_compat_transform(const Certificate& c, const MulPositive& mode) {
  const Certificate& d = mode.square;
  if (c.kind != CertificateKind::Order || d.kind != CertificateKind::Square)
    throw Error(ErrorCode::Malformed, "expected an order and a square certificate");
  if (c.ideal != d.ideal)
    throw Error(ErrorCode::IdealMismatch,
                "cannot combine certificates modulo " + c.ideal.str() + " and " + d.ideal.str());
  Certificate out = c;
  out.f = mul(c.f, d.f);
  out.g = mul(c.g, d.f);
  out.unit = mul(*c.unit, *d.unit);
  out.unit_inverse = mul(*c.unit_inverse, *d.unit_inverse);
  out.lhs = sub(sub(out.g, out.f), pow(*out.unit, 2));
  out.combination.clear();
  for (const auto& it : c.combination) out.combination.push_back({it.element, mul(d.f, it.cofactor)});
  for (const auto& it : d.combination)
    out.combination.push_back({it.element, mul(pow(*c.unit, 2), it.cofactor)});
  out.witness = combine_witness(c.witness, d.witness);
  out.route = c.route + "*square";
  out.assumed = c.assumed || d.assumed;
  if (c.verdict.proved() && d.verdict.proved()) {
    out.verdict.outcome = Outcome::Proved;
    out.verdict.reason = "product of verified orders";
    out.verdict.witness.reset();
  } else {
    out.verdict.outcome = Outcome::Unknown;
    out.verdict.reason = "a factor rests on an assumption";
  }
  return out;
}

UnitSign sign_of_unit(const Term& f, const Box& region, const CertOptions& opt) {
  ZerosetQuery q{constant(0), Predicate::NonZero, f, region, std::nullopt, opt.verifier};
  Verdict v = prove_on_zeroset(q);
  settle(v, ErrorCode::NotNowhereZero, to_infix(f) + " != 0", opt);
  auto s = sign_at(f, region.center());
  if (!s || *s == 0)
    throw Error(ErrorCode::UnknownVerdict, "sign of " + to_infix(f) + " undecided at the center");
  UnitSign out;
  out.positive = *s > 0;
  out.square = cert_square(out.positive ? f : neg(f), Ideal(), std::nullopt, region, opt);
  return out;
}

namespace {

void flatten_sum(const Term& t, std::vector<Term>& out) {
  if (t.kind() == Kind::Add) {
    for (const auto& c : t.children()) flatten_sum(c, out);
  } else {
    out.push_back(t);
  }
}

std::optional<Term> square_base(const Term& t) {
  if (t.kind() == Kind::PowNat && t.exponent() % 2 == 0 && t.exponent() > 0)
    return t.exponent() == 2 ? t.child(0) : pow(t.child(0), t.exponent() / 2);
  if (t.kind() == Kind::Mul && t.children().size() == 2 && t.child(0) == t.child(1))
    return t.child(0);
  if (t.is_const() && t.value() >= 0) return square_root_term(t);
  return std::nullopt;
}

}  // namespace

Certificate sos_unit(const Term& f, const Ideal& I, const Box& region, std::optional<Term> u,
                     const CertOptions& opt) {
  std::vector<Term> parts;
  flatten_sum(f, parts);
  std::vector<Term> bases;
  for (const auto& p : parts) {
    auto b = square_base(p);
    if (!b)
      throw Error(ErrorCode::PatternMismatch,
                  to_infix(p) + " is not a square in " + to_infix(f));
    bases.push_back(*b);
  }
  bool found = false;
  if (u) {
    for (const auto& b : bases) found = found || identically_zero(sub(b, *u));
    if (!found)
      throw Error(ErrorCode::PatternMismatch, to_infix(*u) + "^2 does not occur in " + to_infix(f));
    if (!globally_positive(pow(*u, 2))) cert_invertible(*u, I, std::nullopt, region, opt);
  } else {
    for (std::size_t i = 0; i < parts.size() && !found; ++i)
      found = (parts[i].is_const() && parts[i].value() > 0) || globally_positive(bases[i]);
    if (!found)
      throw Error(ErrorCode::PatternMismatch, to_infix(f) + " has no unit square term");
  }
  Certificate c = cert_invertible(f, I, std::nullopt, region, opt);
  c.route = "sum-of-squares/" + c.route;
  return c;
}

nlohmann::json to_json(const Certificate& c) {
  json gens = json::array();
  for (const auto& g : c.ideal.generators()) gens.push_back(term_to_json(g));
  json combination = json::array();
  for (const auto& it : c.combination)
    combination.push_back(
        {{"element", term_to_json(it.element)}, {"cofactor", term_to_json(it.cofactor)}});
  std::vector<Term> terms{c.lhs};
  for (const auto& it : c.combination) terms.push_back(it.cofactor);
  json j{{"v", kSchemaVersion},
         {"kind", to_string(c.kind)},
         {"f", term_to_json(c.f)},
         {"g", term_to_json(c.g)},
         {"ideal", gens},
         {"region", box_to_json(c.region)},
         {"witness", term_to_json(c.witness)},
         {"unit", c.unit ? term_to_json(*c.unit) : json(nullptr)},
         {"unit_inverse", c.unit_inverse ? term_to_json(*c.unit_inverse) : json(nullptr)},
         {"inverse", c.inverse ? term_to_json(*c.inverse) : json(nullptr)},
         {"cofactor", term_to_json(c.cofactor())},
         {"combination", combination},
         {"residual", term_to_json(c.residual())},
         {"route", c.route},
         {"assumed", c.assumed},
         {"verdict", to_json(c.verdict)},
         {"obligations", obligations_to_json(terms)}};
  return j;
}

}  // namespace cinf
