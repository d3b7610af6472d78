#include <doctest.h>

#include <cmath>
#include <vector>

#include "wmvt/mvt.hpp"
#include "wmvt/random.hpp"

using namespace wmvt;

namespace {

std::vector<Expr> exprs(std::initializer_list<const char*> texts) {
  std::vector<Expr> out;
  for (const char* t : texts) out.push_back(parse(t));
  return out;
}

}  // namespace

TEST_SUITE("mvt") {

TEST_CASE("cauchy examples") {
  const auto c = cauchy_mvt(parse("x^2"), parse("x"), 0, 1);
  CHECK(std::abs(c.xi - 0.5) <= 1e-12);
  CHECK(c.strategy == Strategy::SignChangeBisection);
  CHECK(c.certified);
  CHECK(c.lo < c.xi);
  CHECK(c.xi < c.hi);

  const auto t = cauchy_mvt(parse("sin(x)"), parse("cos(x)"), 0, M_PI / 2);
  CHECK(std::abs(t.xi - M_PI / 4) <= 1e-9);
  // The identity itself, without determinants.
  const double lhs = std::cos(t.xi) * (std::cos(0.0) - std::cos(M_PI / 2));
  const double rhs = -std::sin(t.xi) * (std::sin(0.0) - std::sin(M_PI / 2));
  CHECK(std::abs(lhs - rhs) <= 1e-10);

  const auto d = cauchy_mvt(parse("x"), parse("x"), 0, 1);
  CHECK(d.strategy == Strategy::MinimumOfAbs);
  CHECK(d.residual == 0.0);
  CHECK(d.xi > 0.0);
  CHECK(d.xi < 1.0);
}

TEST_CASE("mismatch function") {
  auto sys = AnchoredSystem::wronskian(exprs({"1"}), {0, 1});
  const MvtProblem prob(sys, parse("x^2"), parse("x"), {}, {}, {0, 1});
  for (double xi : {0.1, 0.5, 0.9}) CHECK(identity_mismatch(prob, xi) == doctest::Approx(2 * xi - 1));
  CHECK_THROWS_AS(identity_mismatch(prob, 0.0), DomainError);

  const MvtProblem same(sys, parse("exp(x)"), parse("exp(x)"), {}, {}, {0, 1});
  CHECK(identity_mismatch(same, 0.3) == 0.0);
}

TEST_CASE("taylor examples") {
  const auto k1 = taylor_mvt(parse("exp(x)"), 0, 1, 1);
  CHECK(std::abs(k1.certificate.xi - std::log(M_E - 1)) <= 1e-9);
  const auto k2 = taylor_mvt(parse("exp(x)"), 0, 1, 2);
  CHECK(std::abs(k2.certificate.xi - std::log(2 * (M_E - 2))) <= 1e-9);
  CHECK(k2.display_residual <= 1e-10);
  CHECK(k2.taylor_polynomial == doctest::Approx(2.0));
  CHECK(k2.remainder == doctest::Approx(M_E - 2));

  // The mismatch at xi is f^(k)(xi) (x-a)^k/k! - R for the Taylor instance.
  const auto poly = taylor_mvt(parse("x^3 - 2*x + 1"), -0.5, 1.0, 3);
  CHECK(poly.certificate.strategy == Strategy::MinimumOfAbs);
  CHECK(poly.display_residual <= 1e-10);
}

TEST_CASE("divided difference form") {
  const std::vector<double> p{0, 0.5, 1};
  const auto r = divided_difference_mvt(parse("x^3"), p);
  CHECK(std::abs(r.certificate.xi - 0.5) <= 1e-12);
  CHECK(r.divided_difference == doctest::Approx(1.5));
  CHECK(r.gap <= 1e-9);
}

TEST_CASE("ratz russel examples") {
  const std::vector<double> p{0, 0.5, 1};
  const auto a = ratz_russel_mvt(parse("x^3"), parse("x^2"), p);
  CHECK(std::abs(a.certificate.xi - 0.5) <= 1e-12);

  const std::vector<double> q{0, 1, 2};
  const auto b = ratz_russel_mvt(parse("exp(x)"), parse("x^2"), q);
  const double ddf = (std::exp(2.0) - 2 * M_E + 1) / 2;
  CHECK(b.dd_f.value == doctest::Approx(ddf).epsilon(1e-13));
  CHECK(std::abs(b.certificate.xi - std::log(2 * ddf)) <= 1e-9);

  const auto same = ratz_russel_mvt(parse("sin(x) + 2"), parse("sin(x) + 2"), std::vector<double>{0, 1});
  CHECK(same.certificate.strategy == Strategy::MinimumOfAbs);
  CHECK(same.gap == 0.0);

  CHECK_THROWS_AS(ratz_russel_mvt(parse("exp(x)"), parse("sin(x)"), std::vector<double>{0, 3}),
                  DerivativeVanishes);
}

TEST_CASE("certificate constants are the node determinants") {
  AnchoredSystem sys;
  sys.m = 1;
  sys.k = 2;
  sys.funcs = exprs({"exp(x)", "1", "x"});
  sys.anchors = Eigen::MatrixXd(3, 1);
  sys.anchors << 1.0, 0.0, 2.0;
  sys.interval = {0, 1};
  Eigen::VectorXd p(1), q(1);
  p << 0.0;
  q << 1.0;
  const MvtProblem prob(sys, parse("sin(x)"), parse("x^2"), p, q, {0.1, 0.5, 0.9});
  const auto c = find_intermediate_point(prob);
  CHECK(c.certified);
  CHECK(c.node_det_g == prob.node_det_g().value);
  CHECK(c.node_det_f == prob.node_det_f().value);
  CHECK(c.xi > 0.1);
  CHECK(c.xi < 0.9);

  const auto sides = identity_sides(prob, c.xi);
  CHECK(relative_gap(sides.lhs, sides.rhs) <= 1e-9);
}

TEST_CASE("scaling f keeps the root") {
  const auto base = cauchy_mvt(parse("exp(x)"), parse("x^2 + 1"), 0.2, 1.3);
  const auto scaled = cauchy_mvt(parse("-3.5*exp(x)"), parse("x^2 + 1"), 0.2, 1.3);
  REQUIRE(base.strategy == Strategy::SignChangeBisection);
  CHECK(std::abs(base.xi - scaled.xi) <= 1e-10);
}

TEST_CASE("leftmost root and bracket list") {
  // f' / g' = cos / 1 takes the secant slope at several points.
  const auto c = cauchy_mvt(parse("sin(x)"), parse("x"), 0, 4 * M_PI + 0.5);
  CHECK(c.brackets.size() >= 2);
  CHECK(c.xi >= c.brackets.front().first);
  CHECK(c.xi <= c.brackets.front().second);
}

TEST_CASE("irregular systems are refused") {
  AnchoredSystem sys = AnchoredSystem::wronskian(exprs({"x", "x^2"}), {-1, 1});
  const MvtProblem prob(sys, parse("exp(x)"), parse("x^3"), {}, {}, {-1, 0, 1});
  CHECK_THROWS_AS(find_intermediate_point(prob), RegularityError);
  CHECK_THROWS_AS(MvtProblem(sys, parse("x"), parse("x"), {}, {}, {0.5, 0.5, 0.5}), PreconditionError);
}

TEST_CASE("exterior anchors") {
  const auto funcs = exprs({"1", "x", "x^2", "x^3"});
  const Expr f = parse("exp(x)");
  const Expr g = parse("x^4");
  const std::vector<double> nodes{0.1, 0.5, 0.9};
  const auto prob = exterior_anchor_problem(funcs, f, g, {-1, 2}, nodes, {0, 1});
  CHECK(prob.system().anchors(2, 0) == 1.0);
  CHECK(prob.system().anchors(2, 1) == 4.0);
  CHECK(prob.p()(0) == doctest::Approx(std::exp(-1.0)));
  CHECK(prob.q()(1) == 16.0);

  const auto c = find_intermediate_point(prob);
  const auto s = exterior_sides(funcs, f, g, std::vector<double>{-1, 2}, nodes, c.xi);
  CHECK(s.residual <= 1e-9);
  CHECK(c.residual <= 1e-9);

  const auto conf = exterior_anchor_problem(funcs, f, g, {1.5, 1.5}, nodes, {0, 1});
  CHECK(conf.system().anchors(3, 0) == 1.5 * 1.5 * 1.5);
  CHECK(conf.system().anchors(3, 1) == doctest::Approx(3 * 1.5 * 1.5));

  CHECK_THROWS_AS(exterior_anchor_problem(funcs, f, g, {0.5, 2}, nodes, {0, 1}), std::invalid_argument);
}

TEST_CASE("random certificates are sound") {
  SampleRng rng(31);
  int solved = 0;
  for (int trial = 0; trial < 60; ++trial) {
    const double a = rng.uniform(-1, 0), b = a + rng.uniform(0.3, 1.5);
    const auto f = random_function(rng), g = random_function(rng);
    try {
      const auto c = cauchy_mvt(f.expr(), g.expr(), a, b);
      CHECK(c.xi > a);
      CHECK(c.xi < b);
      if (c.certified) {
        CHECK(c.residual <= c.tolerance);
        ++solved;
      }
    } catch (const NoRootFound&) {
    } catch (const DomainError&) {
    }
  }
  CHECK(solved > 30);
}

}
