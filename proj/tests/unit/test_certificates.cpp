#include <doctest.h>

#include <cmath>

#include "cinf/certificates.hpp"
#include "cinf/errors.hpp"
#include "cinf/parser.hpp"
#include "cinf/term_calculus.hpp"
#include "../support/oracle.hpp"

using namespace cinf;

namespace {

Term T(const std::string& s) { return parse_term(s); }

Box cube(std::set<std::string> vars, long lo = -2, long hi = 2) {
  return Box::uniform(vars, Rational(lo), Rational(hi));
}

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::Malformed;
}

/// Max |residual| over `n` random points of the region.
double residual_at_samples(const Certificate& c, int n = 1000) {
  std::mt19937_64 rng(99);
  Term r = c.residual();
  Box b = c.region.extended(support(r), Range{Rational(-2), Rational(2)});
  double worst = 0;
  for (int i = 0; i < n; ++i) {
    double v = oracle::eval_d(r, oracle::random_point(rng, b));
    if (std::isnan(v)) return v;
    worst = std::max(worst, std::fabs(v));
  }
  return worst;
}

}  // namespace

TEST_CASE("inverse of a globally positive element") {
  Certificate c = cert_invertible(T("1 + x^2"), Ideal(), std::nullopt, cube({"x"}));
  CHECK(c.kind == CertificateKind::Inverse);
  REQUIRE(c.inverse);
  CHECK(normalize(*c.inverse) == normalize(pinv(T("1 + x^2"))));
  CHECK(c.symbolic_check());
  CHECK(residual_at_samples(c) <= 1e-12);
}

TEST_CASE("inverse modulo a point") {
  Ideal I({T("x - 1")});
  Certificate c = cert_invertible(T("x"), I, T("x - 1"), cube({"x"}));
  REQUIRE(c.inverse);
  CHECK(normalize(*c.inverse) == normalize(T("x*pinv(x^2 + (x - 1)^2)")));
  CHECK(c.symbolic_check());
  CHECK(residual_at_samples(c) < 1e-12);
  Term q = c.cofactor();
  std::mt19937_64 rng(5);
  for (int i = 0; i < 1000; ++i) {
    Point p{{"x", oracle::dyadic(rng, Rational(-2), Rational(2), 12)}};
    double lhs = oracle::eval_d(sub(mul(T("x"), *c.inverse), constant(1)), p);
    double rhs = oracle::eval_d(mul(T("x - 1"), q), p);
    CHECK(std::fabs(lhs - rhs) < 1e-12);
  }
}

TEST_CASE("x is not invertible in the free ring") {
  try {
    cert_invertible(T("x"), Ideal(), std::nullopt, cube({"x"}));
    FAIL("expected a refutation");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotInvertibleOnZeroset);
    REQUIRE(e.witness());
    CHECK(*e.witness() == Point{{"x", Rational(0)}});
  }
}

TEST_CASE("sin below exp modulo x") {
  Certificate c = cert_order(T("sin(x)"), T("exp(x)"), Ideal({T("x")}), T("x"), cube({"x"}));
  REQUIRE(c.unit);
  Point zero{{"x", Rational(0)}};
  Term m = sub(T("exp(x)"), T("sin(x)"));
  Term m_tilde = mul(constant(Rational(1, 2)), add(m, psqrt(add(pow(m, 2), pow(T("x"), 4)))));
  CHECK(std::fabs(oracle::eval_d(m_tilde, zero) - 1.0) < 1e-15);
  CHECK(std::fabs(oracle::eval_d(*c.unit, zero) - 1.0) < 1e-15);
  CHECK(c.symbolic_check());
  CHECK(residual_at_samples(c) <= 1e-10);
  REQUIRE(c.unit_inverse);
  CHECK(std::fabs(oracle::eval_d(mul(*c.unit, *c.unit_inverse), {{"x", Rational(1, 3)}}) - 1) < 1e-12);
}

TEST_CASE("order refuted by the exponential counterexample") {
  try {
    cert_order(constant(0), T("exp(x + y) - 1"), Ideal(), std::nullopt, cube({"x", "y"}));
    FAIL("expected a refutation");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::OrderRefuted);
    CHECK(*e.witness() == Point{{"x", Rational(-1)}, {"y", Rational(0)}});
  }
}

TEST_CASE("0 below 1 modulo any ideal") {
  for (const Ideal& I : {Ideal(), Ideal({T("x")}), Ideal({T("x"), T("y - 1")})}) {
    Certificate c = cert_order(constant(0), constant(1), I, std::nullopt, cube({"x", "y"}));
    REQUIRE(c.unit);
    CHECK(normalize(*c.unit).is_one());
    CHECK(c.symbolic_check());
  }
}

TEST_CASE("equality certificates") {
  Certificate radical = cert_equal(T("sin(x)"), T("x*cos(x)"), Ideal({T("x")}), cube({"x"}, -1, 1));
  CHECK(radical.route == "radical");
  CHECK(radical.verdict.proved());
  Certificate trivial = cert_equal(T("x^2"), T("x*x"), Ideal(), cube({"x"}));
  CHECK(trivial.symbolic_check());
  CHECK(trivial.route != "radical");
  Certificate cof = cert_equal(T("y + x*sin(y)"), T("y"), Ideal({T("x")}), cube({"x", "y"}));
  CHECK(cof.route == "cofactors");
  CHECK(cof.symbolic_check());
  try {
    cert_equal(T("x"), T("x + 1"), Ideal({T("x")}), cube({"x"}));
    FAIL("expected NotEqual");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotEqual);
    CHECK(*e.witness() == Point{{"x", Rational(0)}});
  }
}

TEST_CASE("square certificates") {
  Certificate e = cert_square(T("exp(x)"), Ideal(), std::nullopt, cube({"x"}));
  REQUIRE(e.unit);
  CHECK(normalize(*e.unit) == normalize(psqrt(T("exp(x)"))));
  Certificate p = cert_square(T("x"), Ideal({T("x - 1")}), T("x - 1"), cube({"x"}));
  CHECK(p.symbolic_check());
  CHECK(residual_at_samples(p) <= 1e-10);
  CHECK(code_of([] { cert_square(T("x"), Ideal(), std::nullopt, cube({"x"})); }) ==
        ErrorCode::OrderRefuted);
}

TEST_CASE("transitive composition") {
  Ideal I({T("x")});
  Box b = cube({"x"});
  Certificate a = cert_order(constant(0), constant(1), I, T("x"), b);
  Certificate c = cert_order(constant(1), constant(2), I, T("x"), b);
  Certificate ac = order_transitive_compose(a, c);
  CHECK(normalize(ac.g) == constant(2));
  CHECK(ac.symbolic_check());
  CHECK(normalize(ac.witness) == normalize(T("x^2 + x^2")));

  Certificate s = cert_order(T("sin(x)"), T("exp(x)"), I, T("x"), b);
  Certificate t = cert_order(T("exp(x)"), T("exp(x) + 1"), I, T("x"), b);
  Certificate st = order_transitive_compose(s, t);
  CHECK(st.symbolic_check());
  CHECK(residual_at_samples(st) <= 1e-10);
  REQUIRE(st.unit);
  CHECK(oracle::eval_d(*st.unit, {{"x", Rational(0)}}) > 0);

  Certificate other = cert_order(constant(1), constant(2), Ideal({T("x - 1")}), std::nullopt, b);
  CHECK(code_of([&] { order_transitive_compose(a, other); }) == ErrorCode::IdealMismatch);
}

TEST_CASE("compatibility with sums and products") {
  Ideal I({T("x")});
  Box b = cube({"x"});
  Certificate c = cert_order(constant(0), constant(1), I, std::nullopt, b);
  Certificate shifted = order_compat_transform(c, AddConst{T("x")});
  CHECK(normalize(shifted.f) == normalize(T("x")));
  CHECK(normalize(shifted.g) == normalize(T("1 + x")));
  CHECK(*shifted.unit == *c.unit);
  CHECK(shifted.symbolic_check());

  Certificate d = cert_square(T("exp(x)"), I, std::nullopt, b);
  Certificate scaled = order_compat_transform(c, MulPositive{d});
  CHECK(normalize(*scaled.unit) == normalize(psqrt(T("exp(x)"))));
  CHECK(scaled.symbolic_check());
  CHECK(residual_at_samples(scaled) <= 1e-10);

  Certificate foreign = cert_square(T("exp(x)"), Ideal(), std::nullopt, b);
  CHECK(code_of([&] { order_compat_transform(c, MulPositive{foreign}); }) ==
        ErrorCode::IdealMismatch);
  CHECK(code_of([&] { order_compat_transform(c, MulPositive{cert_square(T("x"), I, std::nullopt, b)}); }) ==
        ErrorCode::OrderRefuted);
}

TEST_CASE("sign of a unit") {
  CHECK(sign_of_unit(T("exp(x)"), cube({"x"})).positive);
  UnitSign n = sign_of_unit(T("-(1 + x^2)"), cube({"x"}));
  CHECK_FALSE(n.positive);
  CHECK(n.square.symbolic_check());
  CHECK(code_of([] { sign_of_unit(T("x"), cube({"x"})); }) == ErrorCode::NotNowhereZero);
}

TEST_CASE("sums of squares with a unit") {
  Certificate a = sos_unit(T("1 + sin(x)^2 + y^2"), Ideal(), cube({"x", "y"}));
  REQUIRE(a.inverse);
  CHECK(normalize(*a.inverse) == normalize(pinv(T("1 + sin(x)^2 + y^2"))));
  Certificate b = sos_unit(T("exp(x)^2 + x^2"), Ideal(), cube({"x"}));
  CHECK(b.symbolic_check());
  CHECK(residual_at_samples(b) <= 1e-10);
  CHECK(code_of([] { sos_unit(T("x + y"), Ideal(), cube({"x", "y"})); }) ==
        ErrorCode::PatternMismatch);
}

TEST_CASE("irreflexive and asymmetric on generated pairs") {
  oracle::TermGen gen(41, {"x"});
  Box b = cube({"x"});
  CertOptions opt;
  opt.verifier.max_depth = 20;
  opt.verifier.cell_budget = 10000;
  const std::vector<Ideal> ideals{Ideal({T("x")}), Ideal({T("x - 1")}), Ideal({T("x*(x - 1)")})};
  int proved = 0;
  for (int i = 0; i < 60; ++i) {
    const Ideal& I = ideals[i % 3];
    Term f = gen.term(2);
    Term g = add(f, gen.pick(2) ? exp(gen.term(1)) : gen.term(1));
    CHECK_THROWS_AS(cert_order(f, f, I, std::nullopt, b, opt), Error);
    bool forward = false;
    try {
      Certificate c = cert_order(f, g, I, std::nullopt, b, opt);
      forward = c.verdict.proved();
      CHECK(c.symbolic_check());
      REQUIRE(c.unit);
      for (const auto& [v, r] : c.region.ranges()) {
        (void)v;
        for (int k = 0; k <= 8; ++k) {
          Rational x = r.lo + (r.hi - r.lo) * Rational(k, 8);
          CHECK(oracle::eval_d(*c.unit, {{"x", x}}) > 0);
        }
      }
    } catch (const Error&) {
    }
    if (!forward) continue;
    ++proved;
    CHECK_THROWS_AS(cert_order(g, f, I, std::nullopt, b, opt), Error);
  }
  CHECK(proved > 10);
}

TEST_CASE("certificate JSON carries the schema fields") {
  Certificate c = cert_order(T("sin(x)"), T("exp(x)"), Ideal({T("x")}), T("x"), cube({"x"}));
  nlohmann::json j = to_json(c);
  CHECK(j["v"] == 1);
  CHECK(j["kind"] == "order");
  for (const char* k : {"witness", "unit", "cofactor", "residual", "verdict", "obligations"})
    CHECK(j.contains(k));
}
