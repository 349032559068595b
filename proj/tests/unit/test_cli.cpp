#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "cinf/errors.hpp"
#include "cinf/parser.hpp"
#include "cinf/serialize.hpp"
#include "cinf/session.hpp"
#include "cinf/term_calculus.hpp"
#include "../support/oracle.hpp"

using namespace cinf;

namespace {

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("cinf_test_" + name)).string();
}

}  // namespace

TEST_CASE("infix and s-expression forms agree") {
  Term a = parse_term("exp(x+y) - 1");
  Term b = parse_term("(- (exp (+ x y)) 1)");
  CHECK(a == b);
  CHECK(parse_term("3/4*x") == mul(constant(Rational(3, 4)), var("x")));
  CHECK(parse_term("x^2") == pow(var("x"), 2));
  CHECK(parse_term("psqrt(1 + x^2)").kind() == Kind::PSqrt);
  Term bmp = parse_term("bump[0,1;-1,1](x, y)");
  REQUIRE(bmp.kind() == Kind::BoxBump);
  CHECK(bmp.axes().size() == 2);
  CHECK(parse_term("sin") == sin(var("x")));
}

TEST_CASE("syntax errors carry a position") {
  for (const char* bad : {"x +", "(exp x", "x^2^3", "sin(", "x / y", "1 2 )"}) {
    try {
      parse_term(bad);
      FAIL("expected a syntax error for " << bad);
    } catch (const SyntaxError& e) {
      CHECK(e.code() == ErrorCode::SyntaxError);
    }
  }
}

TEST_CASE("printing round-trips through the parser") {
  oracle::TermGen gen(71, {"x", "y", "z"});
  for (int i = 0; i < 200; ++i) {
    Term t = gen.term(3);
    CHECK(parse_term(to_infix(t)) == t);
    CHECK(parse_sexpr(to_sexpr(t)) == t);
  }
  Term g = parse_term("psqrt(1 + x^2)*pinv(exp(y)) + bump[-1/2,1/2](x)");
  CHECK(parse_term(to_infix(g)) == g);
  CHECK(parse_sexpr(to_sexpr(g)) == g);
}

TEST_CASE("tokenizer groups brackets and quotes") {
  auto t = tokenize("order 'sin(x) + 1' exp(x + y) mod <x, y> on x:[-1, 1]");
  CHECK(t == std::vector<std::string>{"order", "sin(x) + 1", "exp(x + y)", "mod", "<x, y>", "on",
                                      "x:[-1, 1]"});
}

TEST_CASE("command exit codes") {
  Session s;
  CHECK(s.execute_line("order sin exp mod <x> witness x on [-2,2]").exit_code == kProved);
  CommandResult r = s.execute_line("order 0 'exp(x+y) - 1' mod <>");
  CHECK(r.exit_code == kRefuted);
  CHECK(point_from_json(r.artifact["witness"]) == Point{{"x", Rational(-1)}, {"y", Rational(0)}});
  CommandResult inv = s.execute_line("invertible 1+x^2 mod 0");
  CHECK(inv.exit_code == kProved);
  CHECK(inv.artifact["kind"] == "inverse");
  CHECK(s.execute_line("order sin").exit_code == kError);
  CHECK(s.execute_line("frobnicate x").exit_code == kError);
  CHECK(s.execute_line("order x y mod J").exit_code == kError);

  Session starved;
  starved.config.depth = 2;
  starved.config.cell_budget = 4;
  CHECK(starved.execute_line("order 0 'x^2 - x/1000 + 1/1000000'").exit_code == kUnknown);
}

TEST_CASE("named terms, ideals and certificates") {
  Session s;
  CHECK(s.execute_line("let f = sin(x)").exit_code == kProved);
  CHECK(s.execute_line("ideal I = <x>").exit_code == kProved);
  CHECK(s.execute_line("order f exp(x) mod I as c1").exit_code == kProved);
  CHECK(s.certificates().count("c1") == 1);
  CHECK(s.execute_line("equal f 'x*cos(x)' mod I on [-1,1]").exit_code == kProved);
  CHECK(s.execute_line("radical-member f mod I").exit_code == kProved);
  CHECK(s.execute_line("filter exp(x) mod I").exit_code == kRefuted);
  CHECK(s.execute_line("let mod = x").exit_code == kError);
}

TEST_CASE("spectra and roots from the command line") {
  Session s;
  CommandResult sp = s.execute_line("spec at x=0 --term exp(x)-2");
  CHECK(sp.exit_code == kProved);
  CHECK(sp.artifact["in_D"] == "Yes");
  CommandResult hp = s.execute_line("sper at 0 --term exp(x)-2");
  CHECK(hp.artifact["in_H_minus"] == "Yes");
  CommandResult root = s.execute_line("root 'x^3 - 2' --on [1,2] --tol 1e-10");
  CHECK(root.exit_code == kProved);
  CHECK(to_double(*parse_rational(root.artifact["lo"].get<std::string>())) <= 1.2599210498948732);
  CHECK(s.execute_line("root 'x^2 + 1' --on [-1,1]").exit_code == kError);
}

TEST_CASE("localize reads a presentation file") {
  std::string path = temp_path("line.json");
  {
    std::ofstream out(path);
    out << R"({"v": 1, "variables": ["x"], "generators": ["x"]})";
  }
  Session s;
  CommandResult r = s.execute_line("localize " + path + " --invert x");
  CHECK(r.exit_code == kProved);
  CHECK(r.artifact["trivial"]["outcome"] == "Proved");
  std::filesystem::remove(path);
  CHECK(s.execute_line("localize /nonexistent.json --invert x").exit_code == kError);
}

TEST_CASE("session save and load is lossless") {
  Session s;
  s.config.depth = 17;
  s.execute_line("let f = psqrt(1 + x^2)");
  s.execute_line("ideal I = <x, y - 1>");
  s.execute_line("invertible 'x + 2' mod I as inv");
  std::string path = temp_path("session.json");
  s.save(path);
  Session t;
  t.load(path);
  CHECK(canonical_dump(t.to_json()) == canonical_dump(s.to_json()));
  CHECK(t.config.depth == 17);
  t.save(path);
  Session u;
  u.load(path);
  CHECK(canonical_dump(u.to_json()) == canonical_dump(s.to_json()));
  std::filesystem::remove(path);

  nlohmann::json bad = s.to_json();
  bad["v"] = 99;
  CHECK_THROWS_AS(Session::from_json(bad), Error);
}

TEST_CASE("configuration precedence: environment over file") {
  Config c;
  c.apply_json({{"depth", 12}, {"default-region", "[-1,1]"}, {"precision-schedule", {53, 256}}});
  CHECK(c.depth == 12);
  CHECK(c.default_region == Range{Rational(-1), Rational(1)});
  setenv("CINF_DEPTH", "9", 1);
  setenv("CINF_REGION", "[0,3]", 1);
  c.apply_env();
  unsetenv("CINF_DEPTH");
  unsetenv("CINF_REGION");
  CHECK(c.depth == 9);
  CHECK(c.default_region == Range{Rational(0), Rational(3)});
  CHECK(c.precisions == std::vector<mpfr_prec_t>{53, 256});
}

TEST_CASE("region and point literals") {
  auto r = parse_region("x:[-1,1], y:[0, 1/2]");
  CHECK(r.at("y") == Range{Rational(0), Rational(1, 2)});
  CHECK(parse_point("x=0,y=1/2") == Point{{"x", Rational(0)}, {"y", Rational(1, 2)}});
  CHECK_THROWS_AS(parse_range("[2,1]"), Error);
  CHECK(parse_ideal_literal("<x, sin(y)>", {}).generators().size() == 2);
}
