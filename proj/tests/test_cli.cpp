#include "doctest.h"
#include "gitp/expr.hpp"
#include "gitp/suites.hpp"

using namespace gitp;

namespace {

std::string ev(const std::string& text, const std::string& alg = "C") {
  return to_string(Evaluator(algebra_by_name(alg)).eval(text));
}

}  // namespace

TEST_CASE("parser errors carry positions") {
  try {
    parse("(");
    FAIL("expected a syntax error");
  } catch (const SyntaxError& e) {
    CHECK(e.position() == 0);
  }
  try {
    parse("1 + * 2");
    FAIL("expected a syntax error");
  } catch (const SyntaxError& e) {
    CHECK(e.position() == 4);
  }
  CHECK_THROWS_AS(parse("theta(fam(tail=[1]; 0->2)"), SyntaxError);
  CHECK_THROWS_AS(parse("1 $ 2"), SyntaxError);
  CHECK_THROWS_AS(parse("1 2"), SyntaxError);
}

TEST_CASE("scalar evaluation") {
  CHECK(ev("zeta(4)^2") == "-1");
  CHECK(ev("i*i + 1") == "0");
  CHECK(ev("sqrt(2)^2") == "2");
  CHECK(ev("1/2 + 1/3") == "5/6");
  CHECK(ev("conj(zeta(3)) == zeta(3)^2") == "true");
  CHECK(ev("zeta(8) - zeta(8)^3 == sqrt(2)") == "true");
}

TEST_CASE("inner products and functionals") {
  CHECK(ev("phi1(theta(fam(tail=[1]; 0->1/2, 1->2)))") == "1");
  CHECK(ev("phi1(inner(theta(fam(tail=[1/2])) - theta(fam(tail=[2])), theta(fam(tail=[1/2])) - theta(fam(tail=[2]))))") ==
        "-2");
  CHECK(ev("phi0(theta(fam(tail=[1]*gphase(1, 1/2))))") == "1");
  CHECK(ev("phi1(theta(fam(tail=[1]*gphase(1, 1/2))))") == "0");
  CHECK(ev("sim(fam(tail=[1]*gphase(1, 1/2)), fam(tail=[1]))") == "false");
  CHECK(ev("approx(fam(tail=[1]*gphase(1, 1/2)), fam(tail=[1]))") == "true");
  CHECK(ev("psd?(gram([theta(fam(tail=[1])), theta(fam(tail=[-1]))]))") == "true");
}

TEST_CASE("elements in coordinate algebras") {
  CHECK(ev("theta(fam(tail=[1]; 0->2)) - 2*theta(fam(tail=[1]))") == "0");
  CHECK(ev("star(theta(fam(tail=[i]))) == theta(fam(tail=[-i]))") == "true");
  CHECK(ev("mul(theta(fam(tail=[[0, 1, 1, 0]])), theta(fam(tail=[[0, 1, 1, 0]]))) == unit", "M2") == "true");
  CHECK(ev("center?(unit)", "M2") == "true");
  CHECK(ev("center?(theta(fam(tail=[[0, 1, 1, 0]])))", "M2") == "false");
  CHECK(ev("Phi_inv(Phi(theta(fam(tail=[i])))) == theta(fam(tail=[i]))") == "true");
  CHECK(ev("chi(Phi(E(theta(fam(tail=[1]; 0->3)))))") == "3");
}

TEST_CASE("type mismatches report expected and actual types") {
  try {
    Evaluator().eval("phi1(3)");
    FAIL("expected a type mismatch");
  } catch (const TypeMismatch& e) {
    CHECK(e.position() == 5);
    CHECK(std::string(e.what()).find("expected element, got scalar") != std::string::npos);
  }
  CHECK_THROWS_AS(Evaluator().eval("theta(1) + 1"), ExprError);
  CHECK_THROWS_AS(Evaluator().eval("nosuch(1)"), ExprError);
  CHECK_THROWS_AS(algebra_by_name("Q"), Error);
}

TEST_CASE("canonical prints are parse round trips") {
  const char* inputs[] = {
      "1+2*3",
      "(1 + 2) * 3",
      "-(1 - 2) - -3",
      "2^-1",
      "(1/2)^2",
      "a - (b - c)",
      "a / (b * c)",
      "phi1(theta(fam(tail=[1]; 0->1/2, 1->2)))",
      "theta(fam(tail=[[1, 0], [0, 1]]*gphase(1, 1/2)*gphase(1/3, 1/5); 4->[1, i]))",
      "[[1, 2], [3, 4]] == [[1,2],[3,4]]",
      "f(x, g(y, z), [])",
  };
  for (const std::string s : inputs) {
    CAPTURE(s);
    const Expr e = parse(s);
    const std::string p = print(e);
    CHECK(print(parse(p)) == p);
  }
  CHECK(print(parse("a - (b - c)")) == "a - (b - c)");
  CHECK(print(parse("(a - b) - c")) == "a - b - c");
  CHECK(print(parse("(1*2)+3")) == "1*2 + 3");
}

TEST_CASE("printed values evaluate back to themselves") {
  const char* inputs[] = {
      "1/2*zeta(8) - 1/3*i",
      "[1, zeta(3)]",
      "[[1, i], [0, 2]]",
      "fam(tail=[1, -1]*gphase(2, 1/3); 3->5)",
      "class(fam(tail=[i]; 2->7))",
      "3*theta(fam(tail=[1]; 0->2)) - theta(fam(tail=[i]))",
      "Phi(theta(fam(tail=[i])) + 2*theta(fam(tail=[1])))",
  };
  const Evaluator e;
  for (const std::string s : inputs) {
    CAPTURE(s);
    const Value v = e.eval(s);
    CHECK(to_string(e.eval(to_string(v))) == to_string(v));
  }
  const Evaluator m2(algebra_by_name("M2"));
  const Value a = m2.eval("theta(fam(tail=[[0, 1, 1, 0]]; 1->[1, 2, 3, 4]))");
  CHECK(to_string(m2.eval(to_string(a))) == to_string(a));
}

TEST_CASE("suite runner") {
  const SuiteReport d = run_suite("decomposition", 42, Scale::kSmall);
  CHECK(d.failures == 0);
  CHECK(d.cases == 200);
  const SuiteReport c = run_suite("cocycle-perturbed", 7, Scale::kSmall);
  CHECK(c.failures == 0);
  CHECK(c.cases == 100);
  CHECK_THROWS_AS(run_suite("nosuch", 1, Scale::kSmall), DomainError);
  CHECK_THROWS_AS(parse_scale("large"), DomainError);
  CHECK(run_suite("grading", 3, Scale::kMedium).cases == 600);
}

TEST_CASE("suite reports are deterministic apart from timing") {
  for (const auto& info : suite_catalog()) {
    CAPTURE(info.name);
    CHECK_FALSE(info.anchor.empty());
    if (info.name != "adjoint" && info.name != "injectivity" && info.name != "center") continue;
    const std::string a = to_json(run_suite(info.name, 5, Scale::kSmall), false).dump();
    const std::string b = to_json(run_suite(info.name, 5, Scale::kSmall), false).dump();
    CHECK(a == b);
    CHECK(a.find("elapsed") == std::string::npos);
  }
  CHECK(to_json(run_suite("separation", 1, Scale::kSmall)).contains("timing"));
}
