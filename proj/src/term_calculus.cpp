#include "cinf/term_calculus.hpp"

#include <unordered_map>

#include "cinf/errors.hpp"
#include "cinf/polynomial.hpp"

namespace cinf {

const char* to_string(Tri t) {
  switch (t) {
    case Tri::Yes: return "Yes";
    case Tri::No: return "No";
    case Tri::Unknown: return "Unknown";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Interval evaluation

namespace {

Rational bump_q(const Rational& t, const BumpAxis& a) { return (t - a.lo) * (a.hi - t); }

Interval eval_bump(const Term& t, const Box& b, mpfr_prec_t prec) {
  Interval acc = Interval::point(1, prec);
  for (const auto& axis : t.axes()) {
    const Range& r = b.range(axis.var);
    Rational lo = r.lo > axis.lo ? r.lo : axis.lo;
    Rational hi = r.hi < axis.hi ? r.hi : axis.hi;
    if (lo >= axis.hi || hi <= axis.lo || lo > hi) return Interval::point(0, prec);
    Rational c = midpoint(axis.lo, axis.hi);
    Rational peak = c < lo ? lo : (c > hi ? hi : c);
    Rational qmax = bump_q(peak, axis);
    Rational qmin = std::min(bump_q(lo, axis), bump_q(hi, axis));
    if (r.lo <= axis.lo || r.hi >= axis.hi || qmin < 0) qmin = 0;
    acc = acc * Interval::bump_factor(qmin, qmax, prec);
  }
  return acc;
}

class Evaluator {
 public:
  Evaluator(const Box& box, mpfr_prec_t prec) : box_(box), prec_(prec) {}

  Interval eval(const Term& t) {
    if (t.size() > 1) {
      if (auto it = memo_.find(t.id()); it != memo_.end()) return it->second;
    }
    Interval r = compute(t);
    if (t.size() > 1) memo_.emplace(t.id(), r);
    return r;
  }

 private:
  Interval compute(const Term& t) {
    switch (t.kind()) {
      case Kind::Var: {
        if (!box_.has(t.name()))
          throw Error(ErrorCode::Malformed, "variable " + t.name() + " not covered by the box");
        const Range& r = box_.range(t.name());
        return Interval::of(r.lo, r.hi, prec_);
      }
      case Kind::Const: return Interval::point(t.value(), prec_);
      case Kind::Add: {
        Interval acc = eval(t.child(0));
        for (std::size_t i = 1; i < t.children().size(); ++i) acc = acc + eval(t.child(i));
        return acc;
      }
      case Kind::Sub: return eval(t.child(0)) - eval(t.child(1));
      case Kind::Mul: {
        Interval acc = eval(t.child(0));
        for (std::size_t i = 1; i < t.children().size(); ++i) acc = acc * eval(t.child(i));
        return acc;
      }
      case Kind::Neg: return -eval(t.child(0));
      case Kind::PowNat: return pow_nat(eval(t.child(0)), t.exponent());
      case Kind::Exp: return exp(eval(t.child(0)));
      case Kind::Sin: return sin(eval(t.child(0)));
      case Kind::Cos: return cos(eval(t.child(0)));
      case Kind::Atan: return atan(eval(t.child(0)));
      case Kind::Tanh: return tanh(eval(t.child(0)));
      case Kind::PSqrt: return sqrt_pos(guarded_argument(t));
      case Kind::PInv: return inv_pos(guarded_argument(t));
      case Kind::BoxBump: return eval_bump(t, box_, prec_);
    }
    throw Error(ErrorCode::Malformed, "unknown term kind");
  }

  Interval guarded_argument(const Term& t) {
    Interval arg = eval(t.child(0));
    if (arg.positive()) return arg;
    auto& registry = ObligationRegistry::global();
    if (arg.nonpositive())
      throw Error(ErrorCode::ObligationViolated,
                  "argument of " + std::string(kind_name(t.kind())) + " is <= 0 on " + box_.str());
    if (registry.covers(t.obligation(), box_)) return arg;
    // Look for an exact point of the box where the argument is nonpositive.
    std::vector<Point> probes{box_.center()};
    Point lo, hi;
    for (const auto& [v, r] : box_.ranges()) {
      lo.emplace(v, r.lo);
      hi.emplace(v, r.hi);
    }
    probes.push_back(lo);
    probes.push_back(hi);
    for (const auto& p : probes) {
      auto s = sign_at(t.child(0), p);
      if (s && *s <= 0)
        throw Error(ErrorCode::ObligationViolated,
                    "argument of " + std::string(kind_name(t.kind())) + " is <= 0 at " +
                        to_string(p),
                    p);
    }
    throw Error(ErrorCode::PendingObligation,
                "obligation " + std::to_string(t.obligation()) + " (" +
                    to_infix(t.child(0)) + " > 0) is pending on " + box_.str());
  }

  const Box& box_;
  mpfr_prec_t prec_;
  std::unordered_map<const Node*, Interval> memo_;
};

}  // namespace

Interval eval_interval(const Term& t, const Box& b, mpfr_prec_t prec) {
  Evaluator ev(b, prec);
  return ev.eval(t);
}

Interval eval_at(const Term& t, const Point& x, mpfr_prec_t prec) {
  return eval_interval(t, Box::at(x), prec);
}

// ---------------------------------------------------------------------------
// Exact evaluation and zero tests

std::optional<Rational> exact_value(const Term& t, const Point& x) {
  switch (t.kind()) {
    case Kind::Var: {
      auto it = x.find(t.name());
      if (it == x.end())
        throw Error(ErrorCode::Malformed, "variable " + t.name() + " has no coordinate");
      return it->second;
    }
    case Kind::Const: return t.value();
    case Kind::Add: {
      Rational acc = 0;
      for (const auto& c : t.children()) {
        auto v = exact_value(c, x);
        if (!v) return std::nullopt;
        acc += *v;
      }
      return acc;
    }
    case Kind::Sub: {
      auto a = exact_value(t.child(0), x);
      if (!a) return std::nullopt;
      auto b = exact_value(t.child(1), x);
      if (!b) return std::nullopt;
      return Rational(*a - *b);
    }
    case Kind::Mul: {
      Rational acc = 1;
      bool exact = true;
      for (const auto& c : t.children()) {
        auto v = exact_value(c, x);
        if (v && *v == 0) return Rational(0);
        if (!v) exact = false;
        else acc *= *v;
      }
      if (!exact) return std::nullopt;
      return acc;
    }
    case Kind::Neg: {
      auto a = exact_value(t.child(0), x);
      if (!a) return std::nullopt;
      return Rational(-*a);
    }
    case Kind::PowNat: {
      auto a = exact_value(t.child(0), x);
      if (!a) return std::nullopt;
      Rational r = 1;
      for (unsigned i = 0; i < t.exponent(); ++i) r *= *a;
      return r;
    }
    case Kind::Exp:
    case Kind::Cos: {
      auto a = exact_value(t.child(0), x);
      if (a && *a == 0) return Rational(1);
      return std::nullopt;
    }
    case Kind::Sin:
    case Kind::Atan:
    case Kind::Tanh: {
      auto a = exact_value(t.child(0), x);
      if (a && *a == 0) return Rational(0);
      return std::nullopt;
    }
    case Kind::PSqrt: {
      auto a = exact_value(t.child(0), x);
      if (a && *a > 0) return exact_sqrt(*a);
      return std::nullopt;
    }
    case Kind::PInv: {
      auto a = exact_value(t.child(0), x);
      if (a && *a > 0) return Rational(Rational(1) / *a);
      return std::nullopt;
    }
    case Kind::BoxBump:
      for (const auto& axis : t.axes()) {
        auto it = x.find(axis.var);
        if (it == x.end())
          throw Error(ErrorCode::Malformed, "variable " + axis.var + " has no coordinate");
        if (it->second <= axis.lo || it->second >= axis.hi) return Rational(0);
      }
      return std::nullopt;
  }
  return std::nullopt;
}

namespace {

bool structural_zero(const Term& t, const Point& x) {
  switch (t.kind()) {
    case Kind::Const: return t.value() == 0;
    case Kind::Var: {
      auto it = x.find(t.name());
      return it != x.end() && it->second == 0;
    }
    case Kind::Mul:
      for (const auto& c : t.children())
        if (structural_zero(c, x)) return true;
      return false;
    case Kind::PowNat: return t.exponent() > 0 && structural_zero(t.child(0), x);
    case Kind::Add:
      for (const auto& c : t.children())
        if (!structural_zero(c, x)) return false;
      return true;
    case Kind::Sub:
      if (t.child(0) == t.child(1)) return true;
      return structural_zero(t.child(0), x) && structural_zero(t.child(1), x);
    case Kind::Neg:
    case Kind::Sin:
    case Kind::Tanh:
    case Kind::Atan: return structural_zero(t.child(0), x);
    case Kind::BoxBump: {
      auto v = exact_value(t, x);
      return v && *v == 0;
    }
    default: return false;
  }
}

}  // namespace

Tri exact_zero_at(const Term& t, const Point& x) {
  if (auto v = exact_value(t, x)) return *v == 0 ? Tri::Yes : Tri::No;
  if (structural_zero(t, x)) return Tri::Yes;
  for (auto prec : default_precisions()) {
    if (eval_at(t, x, prec).excludes_zero()) return Tri::No;
  }
  if (identically_zero(t)) return Tri::Yes;
  return Tri::Unknown;
}

std::optional<int> sign_at(const Term& t, const Point& x,
                           const std::vector<mpfr_prec_t>& precisions) {
  if (auto v = exact_value(t, x)) return sgn(*v);
  if (structural_zero(t, x)) return 0;
  for (auto prec : precisions) {
    Interval r = eval_at(t, x, prec);
    if (r.positive()) return 1;
    if (r.negative()) return -1;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Differentiation

namespace {

Term s_add(std::vector<Term> terms) {
  std::vector<Term> kept;
  for (auto& t : terms)
    if (!t.is_zero()) kept.push_back(std::move(t));
  return add(std::move(kept));
}

Term s_mul(std::vector<Term> terms) {
  std::vector<Term> kept;
  for (auto& t : terms) {
    if (t.is_zero()) return constant(0);
    if (!t.is_one()) kept.push_back(std::move(t));
  }
  return mul(std::move(kept));
}

Term s_neg(const Term& t) {
  if (t.is_const()) return constant(-t.value());
  return neg(t);
}

}  // namespace

Term differentiate(const Term& t, const std::string& v) {
  switch (t.kind()) {
    case Kind::Var: return constant(t.name() == v ? 1 : 0);
    case Kind::Const: return constant(0);
    case Kind::Add: {
      std::vector<Term> parts;
      for (const auto& c : t.children()) parts.push_back(differentiate(c, v));
      return s_add(std::move(parts));
    }
    case Kind::Sub: {
      Term a = differentiate(t.child(0), v);
      Term b = differentiate(t.child(1), v);
      if (b.is_zero()) return a;
      if (a.is_zero()) return s_neg(b);
      return sub(a, b);
    }
    case Kind::Neg: {
      Term a = differentiate(t.child(0), v);
      return a.is_zero() ? a : s_neg(a);
    }
    case Kind::Mul: {
      std::vector<Term> parts;
      const auto& cs = t.children();
      for (std::size_t i = 0; i < cs.size(); ++i) {
        Term di = differentiate(cs[i], v);
        if (di.is_zero()) continue;
        std::vector<Term> factors;
        for (std::size_t j = 0; j < cs.size(); ++j)
          if (j != i) factors.push_back(cs[j]);
        factors.push_back(di);
        parts.push_back(s_mul(std::move(factors)));
      }
      return s_add(std::move(parts));
    }
    case Kind::PowNat: {
      unsigned n = t.exponent();
      if (n == 0) return constant(0);
      Term db = differentiate(t.child(0), v);
      if (db.is_zero()) return db;
      Term lower = n == 2 ? t.child(0) : pow(t.child(0), n - 1);
      if (n == 1) return db;
      return s_mul({constant(static_cast<long>(n)), lower, db});
    }
    case Kind::Exp: return s_mul({t, differentiate(t.child(0), v)});
    case Kind::Sin: return s_mul({cos(t.child(0)), differentiate(t.child(0), v)});
    case Kind::Cos: {
      Term d = differentiate(t.child(0), v);
      if (d.is_zero()) return d;
      return s_neg(s_mul({sin(t.child(0)), d}));
    }
    case Kind::Atan: {
      Term d = differentiate(t.child(0), v);
      if (d.is_zero()) return d;
      return s_mul({d, pinv(add(constant(1), pow(t.child(0), 2)))});
    }
    case Kind::Tanh: {
      Term d = differentiate(t.child(0), v);
      if (d.is_zero()) return d;
      return s_mul({sub(constant(1), pow(t, 2)), d});
    }
    case Kind::PSqrt: {
      Term d = differentiate(t.child(0), v);
      if (d.is_zero()) return d;
      return s_mul({constant(Rational(1, 2)), d, t, pinv(t.child(0))});
    }
    case Kind::PInv: {
      Term d = differentiate(t.child(0), v);
      if (d.is_zero()) return d;
      return s_neg(s_mul({d, pow(t, 2)}));
    }
    case Kind::BoxBump:
      for (const auto& a : t.axes())
        if (a.var == v)
          throw Error(ErrorCode::Unsupported,
                      "derivatives of bump functions are outside the term fragment");
      return constant(0);
  }
  throw Error(ErrorCode::Malformed, "unknown term kind");
}

// ---------------------------------------------------------------------------
// Normalization and substitution

Term normalize(const Term& t) { return from_poly(to_poly(t)); }

bool identically_zero(const Term& t) { return to_poly(t).is_zero(); }

Term substitute(const Term& t, const Point& values) {
  switch (t.kind()) {
    case Kind::Var: {
      auto it = values.find(t.name());
      return it == values.end() ? t : constant(it->second);
    }
    case Kind::Const: return t;
    case Kind::BoxBump: {
      std::vector<BumpAxis> rest;
      std::vector<Term> factors;
      for (const auto& a : t.axes()) {
        auto it = values.find(a.var);
        if (it == values.end()) {
          rest.push_back(a);
          continue;
        }
        if (it->second <= a.lo || it->second >= a.hi) return constant(0);
        Rational q = bump_q(it->second, a);
        factors.push_back(exp(constant(Rational(-1) / q)));
      }
      if (factors.empty()) return t;
      if (!rest.empty()) factors.push_back(bump(std::move(rest)));
      return mul(std::move(factors));
    }
    default: {
      std::vector<Term> kids;
      bool changed = false;
      for (const auto& c : t.children()) {
        kids.push_back(substitute(c, values));
        changed = changed || kids.back().id() != c.id();
      }
      return changed ? rebuild(t, std::move(kids)) : t;
    }
  }
}

Term substitute(const Term& t, const std::map<std::string, Term>& values) {
  switch (t.kind()) {
    case Kind::Var: {
      auto it = values.find(t.name());
      return it == values.end() ? t : it->second;
    }
    case Kind::Const: return t;
    case Kind::BoxBump: {
      std::vector<BumpAxis> axes = t.axes();
      bool changed = false;
      for (auto& a : axes) {
        auto it = values.find(a.var);
        if (it == values.end()) continue;
        if (it->second.kind() != Kind::Var)
          throw Error(ErrorCode::Unsupported, "bump axes can only be renamed");
        a.var = it->second.name();
        changed = true;
      }
      return changed ? bump(std::move(axes)) : t;
    }
    default: {
      std::vector<Term> kids;
      bool changed = false;
      for (const auto& c : t.children()) {
        kids.push_back(substitute(c, values));
        changed = changed || kids.back().id() != c.id();
      }
      return changed ? rebuild(t, std::move(kids)) : t;
    }
  }
}

// ---------------------------------------------------------------------------
// Structural positivity

namespace {

std::optional<ObligationScope> merge_scopes(const ObligationScope& a, const ObligationScope& b) {
  if (a.kind == ScopeKind::Global) return b;
  if (b.kind == ScopeKind::Global) return a;
  ObligationScope out = ObligationScope::conditional(
      a.hypothesis == b.hypothesis ? a.hypothesis : a.hypothesis + "; " + b.hypothesis,
      std::nullopt);
  if (a.region && b.region) {
    std::map<std::string, Range> m = a.region->ranges();
    for (const auto& [v, r] : b.region->ranges()) {
      auto it = m.find(v);
      if (it == m.end()) {
        m.emplace(v, r);
        continue;
      }
      Range x{std::max(it->second.lo, r.lo), std::min(it->second.hi, r.hi)};
      if (x.lo > x.hi) return std::nullopt;
      it->second = x;
    }
    out.region = Box(std::move(m));
  } else {
    out.region = a.region ? a.region : b.region;
  }
  return out;
}

class PositivityProver {
 public:
  PositivityProver() : hypotheses_(ObligationRegistry::global().hypotheses()) {}

  std::optional<Discharge> positive(const Term& t) {
    if (auto d = positive_structural(t)) return d;
    return from_hypotheses(t);
  }

  std::optional<ObligationScope> nonnegative(const Term& t) {
    switch (t.kind()) {
      case Kind::PowNat:
        if (t.exponent() % 2 == 0) return ObligationScope::global();
        break;
      case Kind::Mul: {
        const auto& cs = t.children();
        if (cs.size() == 2 && cs[0] == cs[1]) return ObligationScope::global();
        ObligationScope scope;
        for (const auto& c : cs) {
          auto s = nonnegative(c);
          if (!s) return std::nullopt;
          auto merged = merge_scopes(scope, *s);
          if (!merged) return std::nullopt;
          scope = *merged;
        }
        return scope;
      }
      case Kind::Add: {
        ObligationScope scope;
        for (const auto& c : t.children()) {
          auto s = nonnegative(c);
          if (!s) return std::nullopt;
          auto merged = merge_scopes(scope, *s);
          if (!merged) return std::nullopt;
          scope = *merged;
        }
        return scope;
      }
      case Kind::BoxBump: return ObligationScope::global();
      case Kind::Const:
        if (t.value() >= 0) return ObligationScope::global();
        return std::nullopt;
      default: break;
    }
    if (auto d = positive(t)) return d->scope;
    return std::nullopt;
  }

 private:
  std::optional<Discharge> positive_structural(const Term& t) {
    switch (t.kind()) {
      case Kind::Const:
        if (t.value() > 0) return Discharge{true, "positive-constant", ObligationScope::global()};
        return std::nullopt;
      case Kind::Exp: return Discharge{true, "exp", ObligationScope::global()};
      case Kind::PSqrt:
      case Kind::PInv: {
        if (auto d = positive(t.child(0)))
          return Discharge{true, t.kind() == Kind::PSqrt ? "psqrt" : "pinv", d->scope};
        Obligation ob = ObligationRegistry::global().get(t.obligation());
        if (ob.global())
          return Discharge{true, t.kind() == Kind::PSqrt ? "psqrt" : "pinv",
                           ObligationScope::global()};
        return std::nullopt;
      }
      case Kind::PowNat: {
        if (t.exponent() == 0) return Discharge{true, "power", ObligationScope::global()};
        if (auto d = positive(t.child(0))) return Discharge{true, "power", d->scope};
        return std::nullopt;
      }
      case Kind::Mul: {
        ObligationScope scope;
        for (const auto& c : t.children()) {
          auto d = positive(c);
          if (!d) return std::nullopt;
          auto merged = merge_scopes(scope, d->scope);
          if (!merged) return std::nullopt;
          scope = *merged;
        }
        return Discharge{true, "product", scope};
      }
      case Kind::Add: {
        ObligationScope scope;
        bool any_positive = false;
        bool constants_only = true;
        for (const auto& c : t.children()) {
          if (auto d = positive(c)) {
            any_positive = true;
            constants_only = constants_only && c.is_const();
            auto merged = merge_scopes(scope, d->scope);
            if (!merged) return std::nullopt;
            scope = *merged;
            continue;
          }
          auto s = nonnegative(c);
          if (!s) return std::nullopt;
          auto merged = merge_scopes(scope, *s);
          if (!merged) return std::nullopt;
          scope = *merged;
        }
        if (!any_positive) return std::nullopt;
        return Discharge{true, constants_only ? "one-plus-square" : "positive-plus-squares", scope};
      }
      default: return std::nullopt;
    }
  }

  std::optional<Discharge> from_hypotheses(const Term& t) {
    if (hypotheses_.empty()) return std::nullopt;
    Term n = normalize(t);
    for (const auto& h : hypotheses_) {
      for (const auto& p : h.positives) {
        if (positive_multiple(n, p)) {
          return Discharge{true,
                           h.kind == PositivityHypothesis::Kind::Tietze ? "tietze-extension"
                                                                        : "nonvanishing-on-zeroset",
                           ObligationScope::conditional(h.describe(), h.scope.region)};
        }
      }
    }
    return std::nullopt;
  }

  std::vector<PositivityHypothesis> hypotheses_;
};

}  // namespace

Discharge discharge_global_positivity(const Term& t) {
  PositivityProver prover;
  if (auto d = prover.positive(t)) return *d;
  Term n = normalize(t);
  if (n != t)
    if (auto d = prover.positive(n)) return *d;
  return {};
}

bool structurally_nonnegative(const Term& t) {
  PositivityProver prover;
  auto s = prover.nonnegative(t);
  if (s && s->kind == ScopeKind::Global) return true;
  auto n = normalize(t);
  s = prover.nonnegative(n);
  return s && s->kind == ScopeKind::Global;
}

}  // namespace cinf
