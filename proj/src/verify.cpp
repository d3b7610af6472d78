#include "wmvt/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "wmvt/determinant.hpp"
#include "wmvt/divdiff.hpp"
#include "wmvt/expr.hpp"
#include "wmvt/mvt.hpp"
#include "wmvt/oracle.hpp"
#include "wmvt/quasiops.hpp"
#include "wmvt/random.hpp"

namespace wmvt {
namespace {

// A random attempt returns false to discard the draw; it is then redrawn.
constexpr int kMaxAttemptsPerCase = 50;

// Draws whose quantities sit this close to rounding noise cannot be compared
// at the suite tolerances in double precision and are discarded.
constexpr double kMaxDivDiffCondition = 1e5;
constexpr double kMinResolution = 1e7;  // |det| / rounding bound

bool poorly_resolved(const DetResult& d) {
  return d.value != 0.0 && std::abs(d.value) < kMinResolution * d.rounding_bound;
}

std::string join(std::span<const double> xs) {
  std::string out = "[";
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += ",";
    out += format_double(xs[i]);
  }
  return out + "]";
}

std::string join(const std::vector<Expr>& fs) {
  std::string out = "[";
  for (std::size_t i = 0; i < fs.size(); ++i) {
    if (i) out += ",";
    out += "\"" + fs[i].to_string() + "\"";
  }
  return out + "]";
}

std::string join(const Eigen::MatrixXd& m) {
  std::string out = "[";
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    if (i) out += ",";
    std::vector<double> row(m.cols());
    for (Eigen::Index j = 0; j < m.cols(); ++j) row[j] = m(i, j);
    out += join(row);
  }
  return out + "]";
}

class Context {
 public:
  Context(SuiteReport& report, std::uint64_t seed) : report_(report), rng_(seed) {}

  SampleRng& rng() { return rng_; }
  int cases() const { return report_.cases; }

  /// Records `gap` against `limit`; a NaN gap fails.
  bool check(int index, double gap, double limit, const std::string& inputs,
             const std::string& expected, const std::string& got) {
    if (gap > report_.max_gap) report_.max_gap = gap;
    if (!(gap <= limit)) {
      report_.failures.push_back({index, inputs, expected, got, gap});
      return false;
    }
    return true;
  }

  bool require(int index, bool ok, const std::string& inputs, const std::string& expected,
               const std::string& got) {
    if (!ok) report_.failures.push_back({index, inputs, expected, got, 0.0});
    return ok;
  }

  void fail(int index, const std::string& inputs, const std::string& got) {
    report_.failures.push_back({index, inputs, "no exception", got, 0.0});
  }

  /// Runs `body` as case `index`, turning exceptions into failures.
  void run_case(int index, const std::string& label, const std::function<void()>& body) {
    try {
      body();
    } catch (const std::exception& e) {
      fail(index, label, e.what());
    }
  }

  /// Random cases first..cases-1. `attempt(index, inputs)` returns false to
  /// discard; `inputs` should be filled before anything can throw.
  void random_cases(int first, const std::function<bool(int, std::string&)>& attempt) {
    for (int index = first; index < report_.cases; ++index) {
      bool done = false;
      for (int tries = 0; tries < kMaxAttemptsPerCase && !done; ++tries) {
        std::string inputs;
        try {
          done = attempt(index, inputs);
        } catch (const std::exception& e) {
          fail(index, inputs, e.what());
          done = true;
        }
        if (!done) ++report_.discarded;
      }
      if (!done) fail(index, "", "no admissible random draw");
    }
  }

 private:
  SuiteReport& report_;
  SampleRng rng_;
};

Interval random_interval(SampleRng& rng, double min_width) {
  const double a = rng.uniform(-1.0, 1.0 - min_width);
  const double b = rng.uniform(a + min_width, 1.0);
  return {a, b};
}

// ---- cauchy -----------------------------------------------------------------

void suite_cauchy(Context& ctx) {
  const int n = std::min(ctx.cases(), 2);
  if (n > 0) {
    ctx.run_case(0, "f=x^2 g=x [0,1]", [&] {
      const auto cert = cauchy_mvt(parse("x^2"), parse("x"), 0.0, 1.0);
      ctx.check(0, std::abs(cert.xi - 0.5), 1e-12, "f=x^2 g=x [0,1]", "xi=0.5",
                "xi=" + format_double(cert.xi));
    });
  }
  if (n > 1) {
    ctx.run_case(1, "f=sin(x) g=cos(x) [0,pi/2]", [&] {
      const double pi = std::numbers::pi;
      const auto cert = cauchy_mvt(parse("sin(x)"), parse("cos(x)"), 0.0, pi / 2);
      ctx.check(1, std::abs(cert.xi - pi / 4), 1e-9, "f=sin(x) g=cos(x) [0,pi/2]",
                "xi=" + format_double(pi / 4), "xi=" + format_double(cert.xi));
    });
  }
  ctx.random_cases(n, [&](int index, std::string& inputs) {
    SampleRng& rng = ctx.rng();
    const auto f = random_function(rng);
    const auto g = random_function(rng);
    const auto ab = random_nodes(rng, 2, 2, -1.0, 1.0, 1e-2);
    const double a = std::min(ab[0], ab[1]);
    const double b = std::max(ab[0], ab[1]);
    inputs = "f=" + f.text + " g=" + g.text + " [" + format_double(a) + "," + format_double(b) + "]";
    const Expr fe = f.expr(), ge = g.expr();
    const auto cert = cauchy_mvt(fe, ge, a, b);
    if (!ctx.require(index, cert.certified && a < cert.xi && cert.xi < b, inputs,
                     "certified xi in ]a,b[", "xi=" + format_double(cert.xi)))
      return true;
    // The identity itself, evaluated without determinants.
    const double lhs = jet_eval(fe, cert.xi, 1).derivative(1) * (eval(ge, b) - eval(ge, a));
    const double rhs = jet_eval(ge, cert.xi, 1).derivative(1) * (eval(fe, b) - eval(fe, a));
    ctx.check(index, relative_gap(lhs, rhs), 1e-9, inputs, "f'(xi)(g(b)-g(a)) = g'(xi)(f(b)-f(a))",
              format_double(lhs) + " vs " + format_double(rhs));
    return true;
  });
}

// ---- taylor -----------------------------------------------------------------

void suite_taylor(Context& ctx) {
  const double e = std::numbers::e;
  struct Closed {
    const char* f;
    double a, x;
    int k;
    double xi;  // NaN: no closed form for xi
  };
  const Closed closed[] = {
      {"exp(x)", 0.0, 1.0, 1, std::log(e - 1.0)},
      {"exp(x)", 0.0, 1.0, 2, std::log(2.0 * (e - 2.0))},
      {"x^3 - 2*x + 1", -0.5, 1.0, 3, std::numeric_limits<double>::quiet_NaN()},
  };
  const int n = std::min<int>(ctx.cases(), std::size(closed));
  for (int i = 0; i < n; ++i) {
    const Closed& c = closed[i];
    const std::string inputs = std::string("f=") + c.f + " a=" + format_double(c.a) +
                               " x=" + format_double(c.x) + " k=" + std::to_string(c.k);
    ctx.run_case(i, inputs, [&] {
      const auto r = taylor_mvt(parse(c.f), c.a, c.x, c.k);
      if (!std::isnan(c.xi))
        ctx.check(i, std::abs(r.certificate.xi - c.xi), 1e-9, inputs, "xi=" + format_double(c.xi),
                  "xi=" + format_double(r.certificate.xi));
      ctx.check(i, r.display_residual, 1e-10, inputs, "f(x) = P(x) + f^(k)(xi)/k!(x-a)^k",
                "display residual " + format_double(r.display_residual));
    });
  }
  ctx.random_cases(n, [&](int index, std::string& inputs) {
    SampleRng& rng = ctx.rng();
    const auto f = random_function(rng);
    const Interval iv = random_interval(rng, 0.05);
    const int k = rng.integer(1, 4);
    inputs = "f=" + f.text + " a=" + format_double(iv.a) + " x=" + format_double(iv.b) +
             " k=" + std::to_string(k);
    const Expr fe = f.expr();
    // A remainder lost in the rounding of f(x) cannot be certified.
    const auto at_a = jet_eval(fe, iv.a, k - 1);
    double poly = 0.0, power = 1.0;
    for (int i = 0; i < k; ++i, power *= iv.b - iv.a) poly += at_a.coeff(i) * power;
    const double fx = eval(fe, iv.b);
    if (std::abs(fx - poly) < 1e-6 * std::max(std::abs(fx), std::abs(poly))) return false;
    const auto r = taylor_mvt(fe, iv.a, iv.b, k);
    ctx.require(index, r.certificate.certified && iv.contains_open(r.certificate.xi), inputs,
                "certified xi in ]a,x[", "xi=" + format_double(r.certificate.xi));
    ctx.check(index, r.display_residual, 1e-10, inputs, "f(x) = P(x) + f^(k)(xi)/k!(x-a)^k",
              "display residual " + format_double(r.display_residual));
    return true;
  });
}

// ---- divdiff_mvt ------------------------------------------------------------

void check_divdiff_mvt(Context& ctx, int index, const std::string& inputs, const Expr& f,
                       std::span<const double> points) {
  const auto r = divided_difference_mvt(f, points);
  const auto [lo, hi] = std::minmax_element(points.begin(), points.end());
  ctx.require(index, r.certificate.certified && *lo < r.certificate.xi && r.certificate.xi < *hi,
              inputs, "certified xi in ]min,max[", "xi=" + format_double(r.certificate.xi));
  ctx.check(index, r.gap / (1.0 + std::abs(r.divided_difference)), 1e-9, inputs,
            "[x..]f=" + format_double(r.divided_difference),
            "f^(k)(xi)/k!=" + format_double(r.scaled_derivative));
}

void suite_divdiff_mvt(Context& ctx) {
  const int n = std::min(ctx.cases(), 1);
  if (n > 0) {
    const std::string inputs = "f=x^3 nodes=[0,0.5,1]";
    ctx.run_case(0, inputs, [&] {
      const double pts[] = {0.0, 0.5, 1.0};
      const auto r = divided_difference_mvt(parse("x^3"), pts);
      ctx.check(0, std::abs(r.certificate.xi - 0.5), 1e-9, inputs, "xi=0.5",
                "xi=" + format_double(r.certificate.xi));
      check_divdiff_mvt(ctx, 0, inputs, parse("x^3"), pts);
    });
  }
  ctx.random_cases(n, [&](int index, std::string& inputs) {
    SampleRng& rng = ctx.rng();
    const auto f = random_function(rng);
    const int k = rng.integer(1, 4);
    const auto pts = random_nodes(rng, k + 1, rng.integer(2, k + 1));
    inputs = "f=" + f.text + " nodes=" + join(pts);
    const Expr fe = f.expr();
    if (!(divdiff_recursive(fe, pts).condition <= kMaxDivDiffCondition)) return false;
    check_divdiff_mvt(ctx, index, inputs, fe, pts);
    return true;
  });
}

// ---- ratz_russel ------------------------------------------------------------

void check_ratz_russel(Context& ctx, int index, const std::string& inputs, const Expr& f,
                       const Expr& g, std::span<const double> points) {
  const auto r = ratz_russel_mvt(f, g, points);
  const auto [lo, hi] = std::minmax_element(points.begin(), points.end());
  ctx.require(index, r.certificate.certified && *lo < r.certificate.xi && r.certificate.xi < *hi,
              inputs, "certified xi in ]min,max[", "xi=" + format_double(r.certificate.xi));
  ctx.check(index, r.gap / (1.0 + std::abs(r.divided_ratio)), 1e-9, inputs,
            "[x..]f/[x..]g=" + format_double(r.divided_ratio),
            "f^(k)(xi)/g^(k)(xi)=" + format_double(r.derivative_ratio));
}

void suite_ratz_russel(Context& ctx) {
  const double e = std::numbers::e;
  struct Closed {
    const char* f;
    const char* g;
    double pts[3];
    double xi;
  };
  const Closed closed[] = {
      {"x^3", "x^2", {0.0, 0.5, 1.0}, 0.5},
      // [0,1,2]exp = (e-1)^2/2 and g'' = 2, so exp(xi) = (e-1)^2.
      {"exp(x)", "x^2", {0.0, 1.0, 2.0}, 2.0 * std::log(e - 1.0)},
  };
  const int n = std::min<int>(ctx.cases(), std::size(closed));
  for (int i = 0; i < n; ++i) {
    const Closed& c = closed[i];
    const std::string inputs =
        std::string("f=") + c.f + " g=" + c.g + " nodes=" + join(std::span<const double>(c.pts));
    ctx.run_case(i, inputs, [&] {
      const auto r = ratz_russel_mvt(parse(c.f), parse(c.g), c.pts);
      ctx.check(i, std::abs(r.certificate.xi - c.xi), 1e-9, inputs, "xi=" + format_double(c.xi),
                "xi=" + format_double(r.certificate.xi));
      check_ratz_russel(ctx, i, inputs, parse(c.f), parse(c.g), c.pts);
    });
  }
  ctx.random_cases(n, [&](int index, std::string& inputs) {
    SampleRng& rng = ctx.rng();
    const auto f = random_function(rng);
    const int k = rng.integer(1, 4);
    std::string g;
    if (rng.coin()) {
      const double c = (rng.coin() ? 1.0 : -1.0) * rng.uniform(0.5, 2.0);
      g = "exp(" + format_double(c) + "*x + " + format_double(rng.uniform(-1.0, 1.0)) + ")";
    } else {
      // Lower-order terms leave g^(k) = k! untouched.
      g = "x^" + std::to_string(k);
      if (k > 1) g += " + " + random_polynomial_text(rng, k - 1);
    }
    const auto pts = random_nodes(rng, k + 1, rng.integer(2, k + 1));
    inputs = "f=" + f.text + " g=" + g + " nodes=" + join(pts);
    const Expr fe = f.expr(), ge = parse(g);
    if (!(divdiff_recursive(fe, pts).condition <= kMaxDivDiffCondition) ||
        !(divdiff_recursive(ge, pts).condition <= kMaxDivDiffCondition))
      return false;
    check_ratz_russel(ctx, index, inputs, fe, ge, pts);
    return true;
  });
}

// ---- recursion --------------------------------------------------------------

std::string system_text(const AnchoredSystem& sys) {
  return "m=" + std::to_string(sys.m) + " k=" + std::to_string(sys.k) + " funcs=" +
         join(sys.funcs) + " anchors=" + join(sys.anchors) + " interval=[" +
         format_double(sys.interval.a) + "," + format_double(sys.interval.b) + "]";
}

void suite_recursion(Context& ctx) {
  int n = 0;
  if (ctx.cases() > n) {
    // Normalised monomials: WW_3(x^3) = W(1, x, x^2/2, x^3) = 3! everywhere.
    const auto sys =
        AnchoredSystem::wronskian({parse("1"), parse("x"), parse("x^2/2")}, Interval{-1.0, 1.0});
    const std::string inputs = system_text(sys) + " f=x^3 n=3 xi=0.3";
    ctx.run_case(n, inputs, [&] {
      const double direct = ww_n(sys, 3, parse("x^3"), 0.3);
      const double recursive = ww_n_recursive(sys, 3, parse("x^3"), 0.3);
      ctx.check(0, std::abs(direct - 6.0) / 6.0, 1e-12, inputs, "6", format_double(direct));
      ctx.check(0, relative_gap(direct, recursive), 1e-6, inputs, format_double(direct),
                format_double(recursive));
    });
    ++n;
  }
  if (ctx.cases() > n) {
    // v_n is annihilated by WW_n and WW_{n+1}(v_{n+1}) = V_{n+1}.
    AnchoredSystem sys;
    sys.m = 1;
    sys.k = 3;
    sys.funcs = {parse("exp(x)"), parse("1"), parse("x"), parse("x^2")};
    sys.anchors = Eigen::MatrixXd(4, 1);
    sys.anchors << 1.0, -2.0, 0.5, 3.0;
    sys.interval = {-0.5, 0.5};
    const std::string inputs = system_text(sys) + " v_n checks at xi=0.2";
    ctx.run_case(n, inputs, [&] {
      const OperatorTable table = build_operator_table(sys);
      const double xi = 0.2;
      for (int j = 1; j <= sys.k; ++j) {
        const Expr& v = table.vfuncs[j - 1];
        const std::string name = "(v_" + std::to_string(j) + ")";
        const double lead = leading_minor(sys, j, xi);
        const double own = ww_n(sys, j - 1, v, xi);
        ctx.check(1, relative_gap(own, lead), 1e-10, inputs,
                  "WW_" + std::to_string(j - 1) + name + " = V_" + std::to_string(j),
                  format_double(own) + " vs " + format_double(lead));
        for (int order = j; order <= sys.k; ++order) {
          const double zero = ww_n(sys, order, v, xi);
          ctx.check(1, std::abs(zero) / (1.0 + std::abs(lead)), 1e-10, inputs,
                    "WW_" + std::to_string(order) + name + " = 0", format_double(zero));
        }
      }
    });
    ++n;
  }
  ctx.random_cases(n, [&](int index, std::string& inputs) {
    SampleRng& rng = ctx.rng();
    AnchoredSystem sys;
    sys.m = rng.integer(0, 2);
    sys.k = 3;
    for (int i = 0; i < sys.m + sys.k; ++i) sys.funcs.push_back(random_function(rng).expr());
    sys.anchors = Eigen::MatrixXd(sys.m + sys.k, sys.m);
    for (Eigen::Index i = 0; i < sys.anchors.size(); ++i)
      sys.anchors.data()[i] = rng.uniform(-2.0, 2.0);
    const double a = rng.uniform(-1.0, 0.5);
    sys.interval = {a, a + 0.5};
    const auto f = random_function(rng);
    const int order = rng.integer(1, 3);
    const double xi = rng.uniform(a + 0.005, a + 0.495);
    inputs = system_text(sys) + " f=" + f.text + " n=" + std::to_string(order) +
             " xi=" + format_double(xi);
    if (!regularity_check(sys, 65).pass) return false;
    const Expr fe = f.expr();
    const DetResult det = ww_n_det(sys, order, fe, xi);
    if (std::abs(det.value) < kMinResolution * det.rounding_bound) return false;
    // Rounding floor of the central difference: eps |WW_{n-1}/V_n| / h, carried
    // through the V_n^2 / V_{n-1} factor. Draws where it reaches the
    // tolerance measure the step size, not the recursion.
    const double vn = leading_minor(sys, order, xi);
    const double v_prev = leading_minor(sys, order - 1, xi);
    const double h = std::max(1e-6, 1e-6 * std::abs(xi));
    const double floor = std::numeric_limits<double>::epsilon() *
                         std::abs(ww_n_unchecked(sys, order - 1, fe, xi) / vn) / h * vn * vn /
                         std::abs(v_prev);
    if (floor > 1e-8 * std::abs(det.value)) return false;
    const double direct = ww_n(sys, order, fe, xi);
    const double recursive = ww_n_recursive(sys, order, fe, xi);
    ctx.check(index, relative_gap(direct, recursive), 1e-6, inputs, format_double(direct),
              format_double(recursive));
    return true;
  });
}

// ---- vanishing --------------------------------------------------------------

Expr product_of_powers(const NodeSystem& ns) {
  std::string text;
  for (std::size_t i = 0; i < ns.size(); ++i) {
    if (i) text += "*";
    text += "(x - " + format_double(ns.distinct[i]) + ")";
    if (ns.mults[i] > 1) text += "^" + std::to_string(ns.mults[i]);
  }
  return parse(text);
}

/// Zero of a jet function's first derivative in ]lo, hi[ by bisection.
double bisect_derivative(const JetFunction& f, double lo, double hi) {
  auto d = [&](double x) { return f(x, 1).derivative(1); };
  double dlo = d(lo);
  for (int it = 0; it < 200 && hi - lo > 1e-15 * (1.0 + std::abs(lo)); ++it) {
    const double mid = 0.5 * (lo + hi);
    const double dm = d(mid);
    if (dm == 0.0) return mid;
    if ((dm < 0) == (dlo < 0)) {
      lo = mid;
      dlo = dm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

void suite_vanishing(Context& ctx) {
  struct Literal {
    const char* f;
    double pts[2];
    Interval iv;
    bool expected;
  };
  const Literal literal[] = {
      {"x*(x - 1)", {0.0, 1.0}, {0.0, 1.0}, true},
      // Both zeros sit at the left endpoint.
      {"x^2", {0.0, 0.0}, {0.0, 1.0}, false},
      {"x^2", {0.0, 0.0}, {-1.0, 1.0}, true},
  };
  const int n = std::min<int>(ctx.cases(), std::size(literal));
  for (int i = 0; i < n; ++i) {
    const Literal& c = literal[i];
    const std::string inputs = std::string("f=") + c.f + " nodes=" +
                               join(std::span<const double>(c.pts)) + " interval=[" +
                               format_double(c.iv.a) + "," + format_double(c.iv.b) + "]";
    ctx.run_case(i, inputs, [&] {
      const bool got = vanishes_times(parse(c.f), make_vanishing_spec(c.pts, c.iv));
      ctx.require(i, got == c.expected, inputs, c.expected ? "true" : "false",
                  got ? "true" : "false");
    });
  }
  ctx.random_cases(n, [&](int index, std::string& inputs) {
    SampleRng& rng = ctx.rng();
    const Interval iv = random_interval(rng, 0.5);
    const int k = rng.integer(1, 3);
    const auto pts = random_nodes(rng, k + 1, rng.integer(1, k + 1), iv.a, iv.b, 0.05);
    const NodeSystem zeros = normalize_nodes(pts);
    const Expr f = product_of_powers(zeros);
    const auto g = random_function(rng);

    AnchoredSystem sys;
    sys.m = rng.integer(0, 1);
    sys.k = k;
    for (int i = 0; i < sys.m + k; ++i) sys.funcs.push_back(random_function(rng).expr());
    sys.anchors = Eigen::MatrixXd(sys.m + k, sys.m);
    for (Eigen::Index i = 0; i < sys.anchors.size(); ++i)
      sys.anchors.data()[i] = rng.uniform(-2.0, 2.0);
    sys.interval = iv;
    inputs = "f=" + f.to_string() + " g=" + g.text + " " + system_text(sys);
    if (!regularity_check(sys, 65).pass) return false;

    const VanishingSpec spec = make_vanishing_spec(pts, iv);
    if (!ctx.require(index, vanishes_times(f, spec), inputs, "f vanishes k+1 times", "false"))
      return true;

    // Product closure.
    ctx.require(index, vanishes_times(f * g.expr(), spec), inputs, "f*g vanishes k+1 times",
                "false");

    // Derivative decrement: f' keeps k_i - 1 at each node plus one Rolle point per gap.
    const JetFunction fj = as_jet_function(f);
    const JetFunction dfj = [fj](double x, int order) { return fj(x, order + 1).differentiated(); };
    std::vector<double> dpts;
    for (std::size_t i = 0; i < zeros.size(); ++i) {
      for (int j = 1; j < zeros.mults[i]; ++j) dpts.push_back(zeros.distinct[i]);
      if (i + 1 < zeros.size())
        dpts.push_back(bisect_derivative(fj, zeros.distinct[i], zeros.distinct[i + 1]));
    }
    ctx.require(index, static_cast<int>(dpts.size()) == k &&
                           vanishes_times(dfj, make_vanishing_spec(dpts, iv)),
                inputs, "f' vanishes k times", "false at " + join(dpts));

    // Zero count of WW_n(f).
    for (int order = 0; order <= k; ++order) {
      const ZeroCount zc = ww_zero_count(sys, order, f, zeros);
      ctx.require(index, zc.total() >= k + 1 - order, inputs,
                  "WW_" + std::to_string(order) + "(f) has >= " + std::to_string(k + 1 - order) +
                      " zeros",
                  std::to_string(zc.at_nodes) + " at nodes + " + std::to_string(zc.elsewhere) +
                      " elsewhere");
    }
    return true;
  });
}

// ---- theorem2 ---------------------------------------------------------------

/// Returns false (discard) when the exterior-form determinants are too close
/// to rounding noise for a relative comparison.
bool check_theorem2(Context& ctx, int index, const std::string& inputs,
                    const std::vector<Expr>& funcs, const Expr& f, const Expr& g,
                    const std::vector<double>& exterior, const std::vector<double>& nodes,
                    Interval iv, bool may_discard) {
  const MvtProblem prob = exterior_anchor_problem(funcs, f, g, exterior, nodes, iv);
  const MvtCertificate cert = find_intermediate_point(prob);
  const ExteriorSides sides = exterior_sides(funcs, f, g, exterior, nodes, cert.xi);
  if (may_discard && (poorly_resolved(sides.node_det_f) || poorly_resolved(sides.node_det_g) ||
                      poorly_resolved(sides.xi_det_f) || poorly_resolved(sides.xi_det_g)))
    return false;
  ctx.require(index, cert.certified && iv.contains_open(cert.xi), inputs, "certified xi",
              "xi=" + format_double(cert.xi) + " residual=" + format_double(cert.residual));
  ctx.check(index, sides.residual, 1e-9, inputs, format_double(sides.lhs),
            format_double(sides.rhs));
  return true;
}

void suite_theorem2(Context& ctx) {
  const std::vector<Expr> cubic = {parse("1"), parse("x"), parse("x^2"), parse("x^3")};
  const char* gs[] = {"x^3", "x^4"};
  const int n = std::min(ctx.cases(), 2);
  for (int i = 0; i < n; ++i) {
    const std::string inputs = std::string("funcs=[1,x,x^2,x^3] f=exp(x) g=") + gs[i] +
                               " exterior=[-1,2] nodes=[0,0.5,1]";
    ctx.run_case(i, inputs, [&] {
      check_theorem2(ctx, i, inputs, cubic, parse("exp(x)"), parse(gs[i]), {-1.0, 2.0},
                     {0.0, 0.5, 1.0}, {0.0, 1.0}, false);
    });
  }
  ctx.random_cases(n, [&](int index, std::string& inputs) {
    SampleRng& rng = ctx.rng();
    const int m = rng.integer(1, 2);
    const int k = rng.integer(1, 2);
    const Interval iv{-0.5, 0.5};
    std::vector<Expr> funcs;
    switch (rng.integer(0, 2)) {
      case 0:
        funcs = monomials(m + k);
        break;
      case 1: {
        // Exponentials with distinct rates form an extended Chebyshev system.
        std::vector<double> rates = random_nodes(rng, m + k, m + k, -2.0, 2.0, 0.3);
        std::sort(rates.begin(), rates.end());
        for (double c : rates) funcs.push_back(parse("exp(" + format_double(c) + "*x)"));
        break;
      }
      default:
        for (int i = 0; i < m + k; ++i) funcs.push_back(random_function(rng).expr());
    }
    std::vector<double> exterior;
    for (int i = 0; i < m; ++i) {
      if (i > 0 && rng.coin(0.25)) {
        exterior.push_back(exterior.back());
        continue;
      }
      const double d = rng.uniform(0.7, 2.0);
      exterior.push_back(rng.coin() ? -d : d);
    }
    const auto nodes = random_nodes(rng, k + 1, rng.integer(2, k + 1), iv.a, iv.b, 1e-2);
    const auto f = random_function(rng);
    const auto g = random_function(rng);
    inputs = "funcs=" + join(funcs) + " f=" + f.text + " g=" + g.text +
             " exterior=" + join(exterior) + " nodes=" + join(nodes);
    try {
      return check_theorem2(ctx, index, inputs, funcs, f.expr(), g.expr(), exterior, nodes, iv,
                            true);
    } catch (const RegularityError&) {
      return false;
    }
  });
}

// ---- oracle_dets ------------------------------------------------------------

void suite_oracle_dets(Context& ctx) {
  struct Closed {
    std::vector<const char*> funcs;
    std::vector<double> nodes;
    double value;
  };
  const Closed closed[] = {
      {{"1", "x^2"}, {0.0, 2.0}, 4.0},
      {{"1", "x", "x^2/2"}, {0.3, 0.3, 0.3}, 1.0},
  };
  const int n = std::min<int>(ctx.cases(), std::size(closed));
  for (int i = 0; i < n; ++i) {
    const Closed& c = closed[i];
    std::vector<Expr> funcs;
    for (const char* s : c.funcs) funcs.push_back(parse(s));
    const std::string inputs = "funcs=" + join(funcs) + " nodes=" + join(c.nodes);
    ctx.run_case(i, inputs, [&] {
      const auto ns = normalize_nodes(c.nodes);
      const Eigen::MatrixXd mat = anchored_matrix(funcs, Eigen::MatrixXd(funcs.size(), 0), ns);
      const double lu = lu_determinant(mat).value;
      const double cof = cofactor_determinant(mat);
      ctx.check(i, relative_gap(lu, c.value), 1e-12, inputs, format_double(c.value),
                "lu " + format_double(lu));
      ctx.check(i, relative_gap(cof, c.value), 1e-12, inputs, format_double(c.value),
                "cofactor " + format_double(cof));
    });
  }
  ctx.random_cases(n, [&](int index, std::string& inputs) {
    SampleRng& rng = ctx.rng();
    const int dim = rng.integer(1, 5);
    const int m = rng.integer(0, std::min(2, dim - 1));
    std::vector<Expr> funcs;
    for (int i = 0; i < dim; ++i) funcs.push_back(random_function(rng).expr());
    Eigen::MatrixXd anchors(dim, m);
    for (Eigen::Index i = 0; i < anchors.size(); ++i) anchors.data()[i] = rng.uniform(-2.0, 2.0);
    const auto pts = random_nodes(rng, dim - m, rng.integer(1, dim - m));
    inputs = "funcs=" + join(funcs) + " anchors=" + join(anchors) + " nodes=" + join(pts);
    const Eigen::MatrixXd mat = anchored_matrix(funcs, anchors, normalize_nodes(pts));
    const DetResult lu_result = lu_determinant(mat);
    if (lu_result.value == 0.0 || poorly_resolved(lu_result)) return false;
    const double cof = cofactor_determinant(mat);
    const double lu = lu_result.value;
    ctx.check(index, relative_gap(lu, cof), 1e-10, inputs, "cofactor " + format_double(cof),
              "lu " + format_double(lu));
    return true;
  });
}

// ---- divdiff_equiv ----------------------------------------------------------

void suite_divdiff_equiv(Context& ctx) {
  struct Closed {
    const char* f;
    std::vector<double> pts;
    double value;
  };
  const Closed closed[] = {
      {"x^3", {0.0, 0.5, 1.0}, 1.5},
      {"exp(x)", {0.0, 1.0}, std::numbers::e - 1.0},
      {"x^2", {1.0, 1.0}, 2.0},
  };
  const int n = std::min<int>(ctx.cases(), std::size(closed));
  for (int i = 0; i < n; ++i) {
    const Closed& c = closed[i];
    const std::string inputs = std::string("f=") + c.f + " nodes=" + join(c.pts);
    ctx.run_case(i, inputs, [&] {
      const double det = divdiff_det(parse(c.f), c.pts).value;
      const double rec = divdiff_recursive(parse(c.f), c.pts).value;
      ctx.check(i, relative_gap(det, c.value), 1e-12, inputs, format_double(c.value),
                "det " + format_double(det));
      ctx.check(i, relative_gap(rec, c.value), 1e-12, inputs, format_double(c.value),
                "rec " + format_double(rec));
    });
  }
  ctx.random_cases(n, [&](int index, std::string& inputs) {
    SampleRng& rng = ctx.rng();
    const auto f = random_function(rng);
    const int k = rng.integer(1, 6);
    const auto pts = random_nodes(rng, k + 1, rng.integer(1, k + 1));
    inputs = "f=" + f.text + " nodes=" + join(pts);
    // Polynomials of degree < k have a vanishing k-th divided difference.
    if (f.poly_degree >= 0 && f.poly_degree < k) return false;
    const Expr fe = f.expr();
    const auto recursive = divdiff_recursive(fe, pts);
    if (!(recursive.condition <= kMaxDivDiffCondition)) return false;
    const double det = divdiff_det(fe, pts).value;
    const double rec = recursive.value;
    ctx.check(index, relative_gap(det, rec), 1e-9, inputs, "rec " + format_double(rec),
              "det " + format_double(det));
    return true;
  });
}

struct SuiteEntry {
  const char* name;
  void (*run)(Context&);
  double tolerance;
};

constexpr SuiteEntry kSuites[] = {
    {"cauchy", suite_cauchy, 1e-9},
    {"taylor", suite_taylor, 1e-10},
    {"divdiff_mvt", suite_divdiff_mvt, 1e-9},
    {"ratz_russel", suite_ratz_russel, 1e-9},
    {"recursion", suite_recursion, 1e-6},
    {"vanishing", suite_vanishing, kVanishingTolerance},
    {"theorem2", suite_theorem2, 1e-9},
    {"oracle_dets", suite_oracle_dets, 1e-10},
    {"divdiff_equiv", suite_divdiff_equiv, 1e-9},
};

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& s : kSuites) out.emplace_back(s.name);
    return out;
  }();
  return names;
}

SuiteReport run_suite(std::string_view name, std::uint64_t seed, int cases) {
  const auto it = std::find_if(std::begin(kSuites), std::end(kSuites),
                               [&](const SuiteEntry& s) { return name == s.name; });
  if (it == std::end(kSuites)) throw std::invalid_argument("unknown suite: " + std::string(name));
  if (cases < 0) throw std::invalid_argument("case count must be non-negative");

  SuiteReport report;
  report.suite = it->name;
  report.seed = seed;
  report.cases = cases;
  report.tolerance = it->tolerance;
  const auto start = std::chrono::steady_clock::now();
  Context ctx(report, seed);
  it->run(ctx);
  std::stable_sort(report.failures.begin(), report.failures.end(),
                   [](const SuiteFailure& a, const SuiteFailure& b) {
                     return a.case_index < b.case_index;
                   });
  report.wall_time_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return report;
}

}  // namespace wmvt
