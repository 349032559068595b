#include <doctest.h>

#include <cmath>

#include "cinf/localization.hpp"
#include "cinf/parser.hpp"
#include "cinf/term_calculus.hpp"
#include "../support/oracle.hpp"

using namespace cinf;

namespace {

Term T(const std::string& s) { return parse_term(s); }

Box cube(std::set<std::string> vars, long lo = -2, long hi = 2) {
  return Box::uniform(vars, Rational(lo), Rational(hi));
}

const Presentation kLine{{"x"}, Ideal()};

}  // namespace

TEST_CASE("inverting x adjoins y with y*x - 1") {
  LocalizedRing L = localize(kLine, {T("x")});
  REQUIRE(L.fresh.size() == 1);
  CHECK(L.fresh[0] == "y1");
  CHECK(L.extended.variables == std::vector<std::string>{"x", "y1"});
  REQUIRE(L.extended.ideal.generators().size() == 1);
  CHECK(normalize(L.extended.ideal.generators()[0]) == normalize(T("y1*x - 1")));
  Certificate c = eta_inverse_certificate(L, 0);
  CHECK(c.symbolic_check());
}

TEST_CASE("fresh names avoid existing variables") {
  Presentation A{{"x", "y1"}, Ideal({T("y1 - x")})};
  LocalizedRing L = localize(A, {T("x"), T("exp(y1)")});
  CHECK(L.fresh == std::vector<std::string>{"y2", "y3"});
}

TEST_CASE("inverting zero gives the zero ring") {
  LocalizedRing L = localize(kLine, {constant(0)});
  Verdict v = detect_trivial(L, cube({"x"}));
  CHECK(v.proved());
}

TEST_CASE("inverting x in the free ring is not trivial") {
  LocalizedRing L = localize(kLine, {T("x")});
  Verdict v = detect_trivial(L, Box({{"x", Range{Rational(0), Rational(2)}}}));
  REQUIRE(v.refuted());
  CHECK(*v.witness == Point{{"x", Rational(1)}, {"y1", Rational(1)}});
  Verdict full = detect_trivial(L, cube({"x"}));
  REQUIRE(full.refuted());
  const Point& w = *full.witness;
  CHECK(w.at("y1") * w.at("x") == 1);
}

TEST_CASE("inverting x modulo x is trivial") {
  LocalizedRing L = localize(Presentation{{"x"}, Ideal({T("x")})}, {T("x")});
  CHECK(detect_trivial(L, cube({"x"})).proved());
}

TEST_CASE("exp inverts both ways") {
  LocalizedRing L = localize(kLine, {T("exp(x)")});
  Term y = var(L.fresh[0]);
  Certificate c = cert_equal(y, pinv(T("exp(x)")), L.extended.ideal, cube({"x", L.fresh[0]}));
  CHECK(c.verdict.proved());
}

TEST_CASE("saturation") {
  Box b = cube({"x", "y"}, -1, 1);
  CHECK(saturation_contains(T("x"), T("x*exp(y)"), b).proved());
  CHECK(saturation_contains(T("x"), T("1 + x^2"), b).proved());
  Verdict r = saturation_contains(T("x^2"), T("y"), b);
  REQUIRE(r.refuted());
  CHECK(exact_zero_at(T("y"), *r.witness) == Tri::Yes);
  CHECK(exact_zero_at(T("x^2"), *r.witness) == Tri::No);
}

TEST_CASE("radical membership") {
  Box b = cube({"x", "y"}, -1, 1);
  Ideal I({T("x^2 + y^2")});
  CHECK(radical_member(T("y"), I, b).proved());
  Verdict r = radical_member(T("y - 1"), I, b);
  REQUIRE(r.refuted());
  CHECK(*r.witness == Point{{"x", Rational(0)}, {"y", Rational(0)}});
  Ideal J({T("x*y"), T("sin(x) + y")});
  for (const auto& g : J.generators()) CHECK(radical_member(g, J, b).proved());
}

TEST_CASE("evaluation extends to the localization at points where s is nonzero") {
  oracle::TermGen gen(51, {"x"});
  std::mt19937_64 rng(52);
  for (int i = 0; i < 50; ++i) {
    Term s = gen.term(2);
    LocalizedRing L = localize(kLine, {s});
    Point x{{"x", oracle::dyadic(rng, Rational(-2), Rational(2), 6)}};
    Tri z = exact_zero_at(s, x);
    if (z == Tri::Yes) {
      CHECK(exact_zero_at(mul(var(L.fresh[0]), s), {{"x", x["x"]}, {L.fresh[0], Rational(1)}}) ==
            Tri::Yes);
      continue;
    }
    double sv = oracle::eval_d(s, x);
    if (z != Tri::No || std::fabs(sv) < 1e-12) continue;
    oracle::Real yv = oracle::eval(s, x);
    mpfr_ui_div(yv.get(), 1, yv.get(), MPFR_RNDN);
    // y * s(x) - 1 at y = 1/s(x)
    oracle::Real g = oracle::eval(s, x);
    mpfr_mul(g.get(), g.get(), yv.get(), MPFR_RNDN);
    mpfr_sub_ui(g.get(), g.get(), 1, MPFR_RNDN);
    CHECK(std::fabs(g.d()) < 1e-12);
  }
}

TEST_CASE("radical membership is monotone along ideal chains") {
  const std::vector<std::string> atoms{"x", "y", "x - y", "x*y", "sin(y)", "x^2 + y^2"};
  oracle::TermGen gen(53, {"x", "y"});
  Box b = cube({"x", "y"}, -1, 1);
  for (int i = 0; i < 40; ++i) {
    std::vector<Term> gens{T(atoms[gen.pick(6)])};
    Term a = T(atoms[gen.pick(6)]);
    Verdict before = radical_member(a, Ideal(gens), b);
    gens.push_back(T(atoms[gen.pick(6)]));
    Verdict after = radical_member(a, Ideal(gens), b);
    if (before.proved()) CHECK(!after.refuted());
    Verdict sq = radical_member(pow(a, 2), Ideal(gens), b);
    if (sq.outcome != Outcome::Unknown && after.outcome != Outcome::Unknown)
      CHECK(sq.outcome == after.outcome);
  }
}
