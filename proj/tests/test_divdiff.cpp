#include <doctest.h>

#include <cmath>
#include <vector>

#include "wmvt/divdiff.hpp"
#include "wmvt/random.hpp"

using namespace wmvt;

namespace {

double rel(double got, double want) { return std::abs(got - want) / std::max(1.0, std::abs(want)); }

}  // namespace

TEST_SUITE("divdiff") {

TEST_CASE("examples") {
  const Expr cube = parse("x^3");
  const std::vector<double> p{0, 0.5, 1};
  CHECK(divdiff_det(cube, p).value == doctest::Approx(1.5).epsilon(1e-14));
  CHECK(divdiff_recursive(cube, p).value == doctest::Approx(1.5).epsilon(1e-14));

  const Expr e = parse("exp(x)");
  const std::vector<double> q{0, 1};
  CHECK(divdiff_recursive(e, q).value == doctest::Approx(M_E - 1).epsilon(1e-14));
  CHECK(divdiff_det(e, q).value == doctest::Approx(M_E - 1).epsilon(1e-14));

  const std::vector<double> aa{0.3, 0.3};
  CHECK(divdiff_recursive(e, aa).value == doctest::Approx(std::exp(0.3)).epsilon(1e-15));
  CHECK(divdiff_det(e, aa).value == doctest::Approx(std::exp(0.3)).epsilon(1e-15));

  const std::vector<double> all{0.2, 0.2, 0.2, 0.2};
  CHECK(divdiff_det(e, all).value == doctest::Approx(std::exp(0.2) / 6).epsilon(1e-14));
  CHECK(divdiff_recursive(e, all).value == doctest::Approx(std::exp(0.2) / 6).epsilon(1e-14));

  const auto dd = divdiff_det(cube, p);
  CHECK(dd.order == 2);
  CHECK(dd.nodes.total == 3);
}

TEST_CASE("leading coefficient of x^k") {
  SampleRng rng(2);
  for (int k = 1; k <= 6; ++k) {
    const Expr f = pow(Expr::variable(), k);
    const auto pts = random_nodes(rng, k + 1, rng.integer(1, k + 1), -1, 1, 0.05);
    CHECK(divdiff_det(f, pts).value == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(divdiff_recursive(f, pts).value == doctest::Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("two point quotient") {
  const Expr f = parse("sin(x) + x^2");
  const std::vector<double> p{1.5, -0.25};
  const double want = (eval(f, 1.5) - eval(f, -0.25)) / 1.75;
  CHECK(rel(divdiff_det(f, p).value, want) <= 1e-14);
  CHECK(rel(divdiff_recursive(f, p).value, want) <= 1e-14);
}

TEST_CASE("determinant ratio and recursion agree") {
  SampleRng rng(7);
  int checked = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const int k = rng.integer(1, 6);
    const auto fn = random_function(rng);
    const auto pts = random_nodes(rng, k + 1, rng.integer(1, k + 1), -1, 1, 1e-2);
    if (fn.poly_degree >= 0 && fn.poly_degree < k) continue;
    const auto rec = divdiff_recursive(fn.expr(), pts);
    if (rec.condition > 1e5) continue;
    const auto det = divdiff_det(fn.expr(), pts);
    CHECK_MESSAGE(std::abs(det.value - rec.value) <= 1e-9 * std::abs(rec.value), fn.text);
    ++checked;
  }
  CHECK(checked > 150);
}

TEST_CASE("symmetry and linearity") {
  SampleRng rng(8);
  for (int trial = 0; trial < 100; ++trial) {
    const int k = rng.integer(1, 5);
    const Expr f = random_function(rng).expr();
    const Expr g = random_function(rng).expr();
    auto pts = random_nodes(rng, k + 1, rng.integer(1, k + 1), -1, 1, 0.05);
    const double base_rec = divdiff_recursive(f, pts).value;
    const double base_det = divdiff_det(f, pts).value;
    auto shuffled = pts;
    std::rotate(shuffled.begin(), shuffled.begin() + 1, shuffled.end());
    CHECK(divdiff_recursive(f, shuffled).value == base_rec);
    CHECK(std::abs(divdiff_det(f, shuffled).value - base_det) <= 1e-12 * std::max(1.0, std::abs(base_det)));

    const double a = rng.uniform(-2, 2), b = rng.uniform(-2, 2);
    const auto lhs = divdiff_recursive(a * f + b * g, pts);
    const double rhs = a * base_rec + b * divdiff_recursive(g, pts).value;
    // Linearity holds up to the rounding the table amplifies.
    const double scale = std::abs(a * base_rec) + std::abs(b * divdiff_recursive(g, pts).value);
    CHECK(std::abs(lhs.value - rhs) <= 1e-12 * std::max(1.0, scale) * std::max(1.0, lhs.condition));
  }
}

TEST_CASE("wide node ranges are re-centred") {
  const Expr f = parse("x^4");
  const std::vector<double> p{100, 101, 103, 104, 107};
  CHECK(divdiff_det(f, p).value == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(divdiff_recursive(f, p).value == doctest::Approx(1.0).epsilon(1e-8));
}

}
