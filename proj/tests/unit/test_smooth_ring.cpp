#include <doctest.h>

#include "cinf/errors.hpp"
#include "cinf/parser.hpp"
#include "cinf/smooth_ring.hpp"
#include "cinf/term_calculus.hpp"
#include "../support/oracle.hpp"

using namespace cinf;

namespace {
Term T(const std::string& s) { return parse_term(s); }
}  // namespace

TEST_CASE("coset arithmetic") {
  Ideal I({T("x^2 + y^2")});
  Coset a(T("x"), I), b(T("-x"), I), c(T("y"), I);
  CHECK((a + b).rep().is_zero());
  CHECK((a * c).rep() == normalize(T("x*y")));
  CHECK((a - a).rep().is_zero());
  CHECK((-a).rep() == normalize(T("-x")));
  Coset other(T("x"), Ideal({T("x")}));
  try {
    (void)(a + other);
    FAIL("expected IdealMismatch");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::IdealMismatch);
  }
}

TEST_CASE("pullback keeps supported generators") {
  CHECK(pullback_ideal(Ideal({T("x"), T("y")}), {"x"}) == Ideal({T("x")}));
  CHECK(pullback_ideal(Ideal({T("x^2 + y^2")}), {"x"}).is_zero());
  CHECK(pullback_ideal(Ideal({T("x - 1"), T("sin(y)")}), {"y"}) == Ideal({T("sin(y)")}));
}

TEST_CASE("sigma generator") {
  CHECK(sigma(Ideal({T("x")})) == normalize(T("x^2")));
  CHECK(sigma(Ideal({T("x"), T("y - 1")})) == normalize(T("x^2 + (y - 1)^2")));
  CHECK(sigma(Ideal()).is_zero());
}

TEST_CASE("sigma vanishes exactly where all generators do") {
  oracle::TermGen gen(31, {"x", "y"});
  const std::vector<std::string> atoms{"x", "y - 1", "x*y", "sin(x)", "x - y", "exp(y) - 1"};
  for (int i = 0; i < 500; ++i) {
    Ideal I({T(atoms[gen.pick(6)]), T(atoms[gen.pick(6)])});
    Point p{{"x", Rational(gen.pick(3) - 1)}, {"y", Rational(gen.pick(3) - 1)}};
    bool all = true;
    for (const auto& g : I.generators()) all = all && exact_zero_at(g, p) == Tri::Yes;
    Tri s = exact_zero_at(I.sigma(), p);
    CHECK(s != Tri::Unknown);
    CHECK((s == Tri::Yes) == all);
  }
}

TEST_CASE("pullback then promote is the identity on supported generators") {
  Ideal I({T("x - 1"), T("sin(x)*cos(x)")});
  CHECK(pullback_ideal(I, {"x"}) == I);
}

TEST_CASE("coset sums agree with term sums") {
  oracle::TermGen gen(32, {"x", "y"});
  Ideal I({T("x")});
  for (int i = 0; i < 100; ++i) {
    Term a = gen.term(2), b = gen.term(2);
    CHECK((Coset(a, I) + Coset(b, I)).rep() == normalize(add(a, b)));
    CHECK((Coset(a, I) * Coset(b, I)).rep() == normalize(mul(a, b)));
  }
}

TEST_CASE("syntactic membership") {
  Ideal I({T("x"), T("y - 1")});
  CHECK(I.contains_syntactically(T("x*sin(y)")));
  CHECK(I.contains_syntactically(T("x + 3*(y - 1)")));
  CHECK(I.contains_syntactically(I.sigma()));
  CHECK_FALSE(I.contains_syntactically(T("x + 1")));
}

TEST_CASE("presentation JSON round trip") {
  Presentation p{{"x", "y"}, Ideal({T("x^2 + y^2"), T("sin(x)")})};
  Presentation q = presentation_from_json(to_json(p));
  CHECK(q.variables == p.variables);
  CHECK(q.ideal == p.ideal);
  CHECK_THROWS_AS(presentation_from_json(nlohmann::json{{"variables", {"x"}}}), Error);
}

TEST_CASE("fresh names avoid the universe") {
  FreeRing R({"y1", "x"});
  CHECK(R.fresh("y") == "y2");
  CHECK(R.owns(T("x^2")));
  CHECK_FALSE(R.owns(T("z")));
}
