#include <doctest.h>

#include "cinf/certificates.hpp"
#include "cinf/errors.hpp"
#include "cinf/galois_spectra.hpp"
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

}  // namespace

TEST_CASE("hat uses the sigma generator") {
  CHECK(hat(Ideal({T("x"), T("y")})).generator == normalize(T("x^2 + y^2")));
  CHECK(hat(Ideal()).generator.is_zero());
  ZerosetFilter whole = hat(Ideal({constant(1)}));
  CHECK(zeroset_included(whole.structured, constant(1), cube({"x"})).proved());
}

TEST_CASE("filter membership") {
  ZerosetFilter F = ZerosetFilter::of(T("x"));
  Box b = cube({"x"});
  CHECK(filter_member(T("sin(x)"), F, b).proved());
  Verdict r = filter_member(T("exp(x)"), F, b);
  REQUIRE(r.refuted());
  CHECK(*r.witness == Point{{"x", Rational(0)}});
  CHECK(filter_member(F.generator, F, b).proved());
}

TEST_CASE("adjunction examples") {
  Box b = cube({"x", "y"}, -1, 1);
  CHECK(adjunction_check(Ideal({T("x"), T("y")}), ZerosetFilter::of(T("x^2 + y^2")), b).result ==
        Adjunction::BothHold);
  CHECK(adjunction_check(Ideal({T("x^2 + y^2")}), ZerosetFilter::of(T("x")), b).result ==
        Adjunction::BothFail);
  CHECK(adjunction_check(Ideal(), ZerosetFilter::of(T("x")), b).result == Adjunction::BothHold);
}

TEST_CASE("product and intersection radicals") {
  Box b = cube({"x", "y"}, -1, 1);
  Ideal I({T("x")}), J({T("y")});
  ZerosetFilter P = radical_product_vs_intersection(I, J);
  CHECK(P.generator == normalize(T("x^2*y^2")));
  CHECK(filter_member(T("x*y"), P, b).proved());
  CHECK(intersection_member(T("x*y"), I, J, b).proved());
  CHECK(filter_member(T("x"), P, b).refuted());
  CHECK(intersection_member(T("x"), I, J, b).refuted());

  oracle::TermGen gen(61, {"x", "y"});
  const std::vector<std::string> atoms{"x", "y", "x*y", "x - y", "sin(x)*y", "x^2 + y^2"};
  for (int i = 0; i < 50; ++i) {
    Term a = T(atoms[gen.pick(6)]);
    ZerosetFilter self = radical_product_vs_intersection(I, I);
    Verdict v1 = filter_member(a, self, b), v2 = radical_member(a, I, b);
    if (v1.outcome != Outcome::Unknown && v2.outcome != Outcome::Unknown)
      CHECK(v1.outcome == v2.outcome);
  }
}

TEST_CASE("prime filter split") {
  Box b = cube({"x", "y"}, -2, 2);
  ZerosetFilter origin = ZerosetFilter::of(T("x^2 + y^2"));
  CHECK(prime_filter_split(origin, T("x"), T("y - 1"), b) == Split::Left);
  CHECK(prime_filter_split(origin, T("x"), T("y"), b) == Split::Both);
  CHECK(prime_filter_split(origin, T("y - 1"), T("y"), b) == Split::Right);
  CHECK_THROWS_AS(prime_filter_split(origin, T("x - 1"), T("y - 1"), b), Error);
}

TEST_CASE("point spectra") {
  PointSpectra a = point_spectra({{"x", Rational(0)}}, T("exp(x) - 2"));
  CHECK(a.in_D == Tri::Yes);
  CHECK(a.in_H_plus == Tri::No);
  CHECK(a.in_H_minus == Tri::Yes);
  PointSpectra z = point_spectra({{"x", Rational(0)}}, T("x"));
  CHECK(z.in_D == Tri::No);
  CHECK(z.in_H_plus == Tri::No);
  CHECK(z.in_H_minus == Tri::No);
  PointSpectra p = point_spectra({{"x", Rational(5, 7)}}, T("1 + x^2"));
  CHECK(p.in_D == Tri::Yes);
  CHECK(p.in_H_plus == Tri::Yes);
  CHECK(p.consistent());
}

TEST_CASE("orderings at the origin are forced") {
  OrderingReport r = unique_ordering_at_support(
      {{"x", Rational(0)}}, {T("x"), T("exp(x)"), T("-exp(x)"), T("x - 1"), constant(0)});
  REQUIRE(r.entries.size() == 5);
  CHECK(r.entries[0].cls == OrderClass::Support);
  CHECK(r.entries[1].cls == OrderClass::Positive);
  CHECK(r.entries[2].cls == OrderClass::Negative);
  CHECK(r.entries[3].cls == OrderClass::Negative);
  CHECK(r.entries[4].cls == OrderClass::Support);
  CHECK(r.forced == 5);
  CHECK(r.violations == 0);
}

TEST_CASE("certified roots") {
  Rational tol(mpz_class(1), mpz_class("10000000000"));
  struct Case {
    const char* f;
    long a, b;
  };
  for (Case c : {Case{"sin(x) - 1/2", 0, 1}, Case{"x^3 - 2", 1, 2}, Case{"x", -1, 1}}) {
    Term f = T(c.f);
    RootEnclosure e = ivt_root(f, "x", Rational(c.a), Rational(c.b), tol);
    CHECK(e.width() <= tol);
    oracle::Real root = oracle::bisect_root(f, "x", Rational(c.a), Rational(c.b));
    oracle::Real lo = oracle::from_rational(e.lo, 512), hi = oracle::from_rational(e.hi, 512);
    CHECK(mpfr_cmp(lo.get(), root.get()) <= 0);
    CHECK(mpfr_cmp(root.get(), hi.get()) <= 0);
    if (e.lo != e.hi) {
      auto slo = sign_at(f, {{"x", e.lo}}, {256});
      auto shi = sign_at(f, {{"x", e.hi}}, {256});
      REQUIRE(slo);
      REQUIRE(shi);
      CHECK(*slo * *shi <= 0);
    }
  }
}

TEST_CASE("root errors") {
  Rational tol(1, 1000);
  try {
    ivt_root(T("x^2 + 1"), "x", Rational(-1), Rational(1), tol);
    FAIL("expected NoSignChange");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NoSignChange);
  }
  try {
    ivt_root(T("x^3"), "x", Rational(-1), Rational(1), tol);
    FAIL("expected RegularityUnknown");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::RegularityUnknown);
  }
}

TEST_CASE("refuted orders come with a point where f >= g") {
  oracle::TermGen gen(62, {"x"});
  int refuted = 0;
  for (int i = 0; i < 60; ++i) {
    Term f = gen.term(2), g = gen.term(2);
    try {
      cert_order(f, g, Ideal(), std::nullopt, cube({"x"}));
    } catch (const Error& e) {
      if (e.code() != ErrorCode::OrderRefuted) continue;
      ++refuted;
      CHECK(oracle::eval_d(sub(g, f), *e.witness()) <= 0);
    }
  }
  CHECK(refuted > 10);
}

TEST_CASE("closure of a principal filter has the same zeroset") {
  Box b = cube({"x", "y"}, -1, 1);
  for (const char* s : {"x", "x*y", "x^2 + y^2", "sin(x) - y", "(x - 1/2)*(y + 1/2)"}) {
    Term g = T(s);
    ZerosetFilter c = hat(Ideal({g}));
    CHECK(zeroset_included(c.structured, g, b).outcome != Outcome::Refuted);
    CHECK(zeroset_included(g, c.structured, b).outcome != Outcome::Refuted);
  }
}
