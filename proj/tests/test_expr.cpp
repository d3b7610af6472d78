#include <doctest.h>

#include <cmath>
#include <string>
#include <vector>

#include "wmvt/errors.hpp"
#include "wmvt/expr.hpp"
#include "wmvt/random.hpp"

using namespace wmvt;

namespace {

double rel(double got, double want) { return std::abs(got - want) / std::max(1.0, std::abs(want)); }

}  // namespace

TEST_SUITE("expr") {

TEST_CASE("parse builds the expected trees") {
  const Expr a = parse("x*x - x");
  CHECK(a.op() == Expr::Op::Sub);
  CHECK(a.lhs().op() == Expr::Op::Mul);
  CHECK(a.lhs().lhs().op() == Expr::Op::Var);
  CHECK(a.rhs().op() == Expr::Op::Var);

  const Expr b = parse("exp(x)");
  CHECK(b.op() == Expr::Op::Exp);
  CHECK(b.lhs().op() == Expr::Op::Var);

  const Expr c = parse("(x-1)^3 / 6");
  CHECK(c.op() == Expr::Op::Div);
  CHECK(c.lhs().op() == Expr::Op::Pow);
  CHECK(c.lhs().value() == 3.0);
  CHECK(c.lhs().lhs().op() == Expr::Op::Sub);
  CHECK(c.rhs().op() == Expr::Op::Const);
}

TEST_CASE("precedence and associativity") {
  CHECK(eval(parse("1 - 2 - 3"), 0.0) == -4.0);
  CHECK(eval(parse("8 / 4 / 2"), 0.0) == 1.0);
  CHECK(eval(parse("2 + 3 * x^2"), 2.0) == 14.0);
  // Unary minus binds inside the atom, so the power applies to -x.
  CHECK(eval(parse("-x^2"), 3.0) == 9.0);
  CHECK(eval(parse("-(x^2)"), 3.0) == -9.0);
  CHECK(eval(parse("2*-x"), 3.0) == -6.0);
}

TEST_CASE("parse errors carry the byte offset") {
  try {
    parse("x + * 2");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.offset() == 4);
  }
  CHECK_THROWS_AS(parse("tan(x)"), ParseError);
  CHECK_THROWS_AS(parse("(x + 1"), ParseError);
  CHECK_THROWS_AS(parse(""), ParseError);
  CHECK_THROWS_AS(parse("x x"), ParseError);
  CHECK_THROWS_AS(parse("x^-1"), ParseError);
}

TEST_CASE("unparse then reparse gives the same tree") {
  for (const char* s : {"x*x - x", "exp(x)", "(x-1)^3 / 6", "1 - (x - 2)", "x / (x * 2)",
                        "-(x + 1)", "sqrt(1 + x^2) * log(2 + sin(x))", "-x^2", "(-x)^2",
                        "2.5e-3 * cos(3*x - 0.25)", "x^0.5"}) {
    const Expr e = parse(s);
    CHECK_MESSAGE(parse(e.to_string()) == e, s);
  }
  SampleRng rng(11);
  for (int i = 0; i < 200; ++i) {
    const Expr e = random_function(rng).expr();
    CHECK(parse(e.to_string()) == e);
  }
}

TEST_CASE("jet examples") {
  const auto d = jet_eval(parse("exp(x)"), 0.0, 3).derivatives();
  for (int j = 0; j <= 3; ++j) CHECK(d(j) == doctest::Approx(1.0).epsilon(1e-15));

  const auto q = jet_eval(parse("x^2"), 3.0, 2).derivatives();
  CHECK(q(0) == 9.0);
  CHECK(q(1) == 6.0);
  CHECK(q(2) == 2.0);
}

TEST_CASE("jet of sin(x)*exp(x) against central differences") {
  const Expr e = parse("sin(x)*exp(x)");
  const double x0 = 0.7, h = 1e-4;
  const auto d = jet_eval(e, x0, 4).derivatives();
  // Each derivative from central differences of the exactly known previous one.
  for (int j = 1; j <= 4; ++j) {
    const double fd = (jet_eval(e, x0 + h, 4).derivative(j - 1) -
                       jet_eval(e, x0 - h, 4).derivative(j - 1)) / (2 * h);
    CHECK(rel(d(j), fd) <= 1e-6);
  }
  // Closed form: (e^x sin x)^(n) = 2^(n/2) e^x sin(x + n pi/4).
  for (int j = 0; j <= 4; ++j) {
    const double want = std::pow(2.0, j / 2.0) * std::exp(x0) * std::sin(x0 + j * M_PI / 4);
    CHECK(rel(d(j), want) <= 1e-13);
  }
}

TEST_CASE("product rule on random polynomials") {
  SampleRng rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    const Expr p = parse(random_polynomial_text(rng, rng.integer(0, 6)));
    const Expr q = parse(random_polynomial_text(rng, rng.integer(0, 6)));
    const int k = rng.integer(0, 6);
    const double x0 = rng.uniform(-1.5, 1.5);
    const auto dp = jet_eval(p, x0, k).derivatives();
    const auto dq = jet_eval(q, x0, k).derivatives();
    const auto dpq = jet_eval(p * q, x0, k).derivatives();
    for (int n = 0; n <= k; ++n) {
      double leibniz = 0.0, scale = 0.0, binom = 1.0;
      for (int j = 0; j <= n; ++j) {
        if (j > 0) binom = binom * (n - j + 1) / j;
        leibniz += binom * dp(j) * dq(n - j);
        scale += std::abs(binom * dp(j) * dq(n - j));
      }
      CHECK(std::abs(dpq(n) - leibniz) <= 1e-12 * std::max(1.0, scale));
    }
  }
}

TEST_CASE("order zero jet equals plain evaluation") {
  SampleRng rng(5);
  for (int i = 0; i < 200; ++i) {
    const Expr e = random_function(rng).expr();
    const double x0 = rng.uniform(-1, 1);
    CHECK(jet_eval(e, x0, 0).value() == eval(e, x0));
  }
}

TEST_CASE("first derivatives of the unaries") {
  struct Case {
    const char* text;
    double (*deriv)(double);
    double lo, hi;
  };
  const std::vector<Case> cases = {
      {"exp(x)", [](double x) { return std::exp(x); }, -3, 3},
      {"log(x)", [](double x) { return 1 / x; }, 0.1, 5},
      {"sin(x)", [](double x) { return std::cos(x); }, -3, 3},
      {"cos(x)", [](double x) { return -std::sin(x); }, -3, 3},
      {"sqrt(x)", [](double x) { return 0.5 / std::sqrt(x); }, 0.1, 5},
      {"-x", [](double) { return -1.0; }, -3, 3},
      {"x^2.5", [](double x) { return 2.5 * std::pow(x, 1.5); }, 0.1, 5},
  };
  SampleRng rng(17);
  for (const auto& c : cases) {
    const Expr e = parse(c.text);
    for (int i = 0; i < 100; ++i) {
      const double x0 = rng.uniform(c.lo, c.hi);
      CHECK_MESSAGE(rel(jet_eval(e, x0, 1).derivative(1), c.deriv(x0)) <= 1e-12, c.text);
    }
  }
}

TEST_CASE("domain errors") {
  CHECK_THROWS_AS(eval(parse("log(x)"), 0.0), DomainError);
  CHECK_THROWS_AS(eval(parse("1/x"), 0.0), DomainError);
  CHECK_THROWS_AS(jet_eval(parse("sqrt(x)"), 0.0, 1), DomainError);
  CHECK(jet_eval(parse("sqrt(x)"), 0.0, 0).value() == 0.0);
  CHECK_THROWS_AS(jet_eval(parse("x"), 0.0, -1), std::invalid_argument);
}

TEST_CASE("high order coefficients stay finite") {
  const auto j = jet_eval(parse("exp(x)"), 0.0, 20);
  CHECK(j.coeff(20) == doctest::Approx(1.0 / 2432902008176640000.0).epsilon(1e-12));
}

}
