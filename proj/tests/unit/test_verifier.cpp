#include <doctest.h>

#include "cinf/errors.hpp"
#include "cinf/parser.hpp"
#include "cinf/serialize.hpp"
#include "cinf/term_calculus.hpp"
#include "cinf/verifier.hpp"
#include "../support/oracle.hpp"

using namespace cinf;

namespace {

Term T(const std::string& s) { return parse_term(s); }

Box cube(std::set<std::string> vars, long lo, long hi) {
  return Box::uniform(vars, Rational(lo), Rational(hi));
}

ZerosetQuery query(const std::string& phi, Predicate p, const std::string& f, const Box& region) {
  ZerosetQuery q;
  q.constraint = T(phi);
  q.predicate = p;
  q.subject = T(f);
  q.region = region;
  return q;
}

}  // namespace

TEST_CASE("single zeroset point, positive predicate") {
  Verdict v = prove_on_zeroset(query("x", Predicate::GreaterZero, "exp(x) - sin(x)", cube({"x"}, -2, 2)));
  CHECK(v.proved());
}

TEST_CASE("unconstrained counterexample in two variables") {
  Verdict v = prove_on_zeroset(query("0", Predicate::GreaterZero, "exp(x + y) - 1", cube({"x", "y"}, -2, 2)));
  REQUIRE(v.refuted());
  CHECK(*v.witness == Point{{"x", Rational(-1)}, {"y", Rational(0)}});
}

TEST_CASE("equality at an isolated exact point") {
  Verdict v = prove_on_zeroset(query("x^2 + y^2", Predicate::EqualsZero, "y", cube({"x", "y"}, -1, 1)));
  CHECK(v.proved());
}

TEST_CASE("zeroset inclusion examples") {
  Box b = cube({"x", "y"}, -1, 1);
  CHECK(zeroset_included(T("x^2 + y^2"), T("y"), b).proved());
  Verdict r = zeroset_included(T("x^2 + y^2"), T("y - 1"), b);
  REQUIRE(r.refuted());
  CHECK(*r.witness == Point{{"x", Rational(0)}, {"y", Rational(0)}});
  CHECK(zeroset_included(T("1 + x^2"), T("sin(x) + y"), b).proved());
}

TEST_CASE("equality on a continuum needs a cofactor") {
  ZerosetQuery q = query("x", Predicate::EqualsZero, "x*exp(y)", cube({"x", "y"}, -1, 1));
  CHECK(prove_on_zeroset(q).proved());
  ZerosetQuery hard = query("0", Predicate::EqualsZero, "sin(x)^2 + cos(x)^2 - 1", cube({"x"}, -1, 1));
  CHECK(prove_on_zeroset(hard).outcome == Outcome::Unknown);
}

TEST_CASE("budget exhaustion is Unknown, not an error") {
  ZerosetQuery q = query("0", Predicate::GreaterZero, "x^2 - x/1000 + 1/1000000", cube({"x"}, -1, 1));
  q.options.max_depth = 3;
  q.options.cell_budget = 10;
  CHECK(prove_on_zeroset(q).outcome == Outcome::Unknown);
}

TEST_CASE("uncovered support is malformed") {
  ZerosetQuery q = query("x", Predicate::GreaterZero, "y + 1", cube({"x"}, -1, 1));
  CHECK_THROWS_AS(prove_on_zeroset(q), Error);
}

TEST_CASE("refutation witnesses re-validate") {
  oracle::TermGen gen(21, {"x", "y"});
  int refuted = 0;
  for (int i = 0; i < 80; ++i) {
    ZerosetQuery q;
    q.constraint = gen.pick(2) ? constant(0) : T(gen.pick(2) ? "x" : "x - y");
    q.predicate = gen.pick(2) ? Predicate::GreaterZero : Predicate::NonZero;
    q.subject = gen.term(2);
    q.region = cube({"x", "y"}, -2, 2);
    q.options.max_depth = 20;
    q.options.cell_budget = 20000;
    Verdict v = prove_on_zeroset(q);
    if (!v.refuted()) continue;
    ++refuted;
    CHECK(exact_zero_at(q.constraint, *v.witness) == Tri::Yes);
    CHECK(witness_valid(q, *v.witness));
    double fx = oracle::eval_d(q.subject, *v.witness);
    if (q.predicate == Predicate::GreaterZero) CHECK(fx <= 1e-300);
  }
  CHECK(refuted > 10);
}

TEST_CASE("proofs survive region shrinking and budgets are monotone") {
  oracle::TermGen gen(22, {"x", "y"});
  int proved = 0;
  for (int i = 0; i < 100; ++i) {
    ZerosetQuery q;
    q.constraint = gen.pick(2) ? constant(0) : T("x - 1/2");
    q.predicate = Predicate::GreaterZero;
    q.subject = add(constant(Rational(3, 2) + gen.pick(3)), gen.term(2));
    q.region = cube({"x", "y"}, -1, 1);
    q.options.max_depth = 16;
    q.options.cell_budget = 5000;
    Verdict v = prove_on_zeroset(q);
    ZerosetQuery more = q;
    more.options.max_depth = 24;
    more.options.cell_budget = 50000;
    Verdict w = prove_on_zeroset(more);
    if (v.outcome != Outcome::Unknown) CHECK(w.outcome == v.outcome);
    if (!v.proved()) continue;
    ++proved;
    Rational a = oracle::dyadic(gen.rng(), Rational(-1), Rational(0), 4);
    Rational b = oracle::dyadic(gen.rng(), Rational(0), Rational(1), 4);
    ZerosetQuery sub = q;
    sub.region = Box({{"x", Range{a, b}}, {"y", Range{a, b}}});
    CHECK(prove_on_zeroset(sub).outcome != Outcome::Refuted);
    CHECK(prove_on_zeroset(sub).proved());
  }
  CHECK(proved > 20);
}

TEST_CASE("verdict JSON is independent of worker count") {
  ZerosetQuery q = query("(x - 1)^2 + y^2", Predicate::GreaterZero, "x + y", cube({"x", "y"}, -2, 2));
  ZerosetQuery r = query("0", Predicate::GreaterZero, "x^3 - x + 1", cube({"x"}, -2, 2));
  for (auto base : {q, r}) {
    std::string ref;
    for (unsigned w : {1u, 2u, 4u, 8u}) {
      base.options.workers = w;
      std::string s = canonical_dump(to_json(base, prove_on_zeroset(base)));
      if (ref.empty()) ref = s;
      CHECK(s == ref);
    }
  }
}

TEST_CASE("zeroset decomposition") {
  auto pieces = decompose_zeroset(T("x*(y - 1)"));
  REQUIRE(pieces);
  CHECK(pieces->size() == 2);
  auto none = decompose_zeroset(T("exp(x)"));
  REQUIRE(none);
  CHECK(none->empty());
  auto origin = decompose_zeroset(T("x^2 + y^2"));
  REQUIRE(origin);
  REQUIRE(origin->size() == 1);
  CHECK(origin->front().assignment == Point{{"x", Rational(0)}, {"y", Rational(0)}});
}
