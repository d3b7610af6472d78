#include "wmvt/mvt.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>

namespace wmvt {

double relative_gap(double lhs, double rhs) {
  return std::abs(lhs - rhs) / std::max({std::abs(lhs), std::abs(rhs), 1e-300});
}

MvtProblem::MvtProblem(AnchoredSystem sys, Expr f, Expr g, Eigen::VectorXd p, Eigen::VectorXd q,
                       std::vector<double> nodes)
    : sys_(std::move(sys)),
      f_(std::move(f)),
      g_(std::move(g)),
      p_(std::move(p)),
      q_(std::move(q)),
      nodes_(std::move(nodes)) {
  sys_.validate();
  if (p_.size() != sys_.m || q_.size() != sys_.m)
    throw DimensionError("p and q must have m coordinates");
  if (nodes_.size() != static_cast<std::size_t>(sys_.k + 1))
    throw DimensionError("expected k+1 = " + std::to_string(sys_.k + 1) + " nodes");
  ns_ = normalize_nodes(nodes_);
  if (!is_nonidentical(ns_)) throw PreconditionError("nodes must not all coincide");
  for (double x : nodes_)
    if (!sys_.interval.contains(x)) throw PreconditionError("node outside the system interval");

  const std::vector<Expr> ff{f_};
  const std::vector<Expr> gg{g_};
  det_f_ = w_det(sys_, ff, p_.transpose(), ns_);
  det_g_ = w_det(sys_, gg, q_.transpose(), ns_);
}

IdentitySides identity_sides(const MvtProblem& prob, double xi) {
  const auto& sys = prob.system();
  const auto ns = coincident_nodes(xi, sys.k + 1);
  const std::vector<Expr> ff{prob.f()};
  const std::vector<Expr> gg{prob.g()};
  IdentitySides s;
  s.xi_det_f = w_det(sys, ff, prob.p().transpose(), ns);
  s.xi_det_g = w_det(sys, gg, prob.q().transpose(), ns);
  s.lhs = s.xi_det_f.resolved() * prob.node_det_g().resolved();
  s.rhs = s.xi_det_g.resolved() * prob.node_det_f().resolved();
  return s;
}

double identity_mismatch(const MvtProblem& prob, double xi) {
  const auto& ns = prob.node_system();
  if (!(ns.min() < xi && xi < ns.max())) throw DomainError("xi must lie strictly between the nodes");
  const auto s = identity_sides(prob, xi);
  return s.lhs - s.rhs;
}

const char* to_string(Strategy s) {
  return s == Strategy::SignChangeBisection ? "sign_change_bisection" : "minimum_of_abs";
}

namespace {

int sign_of(double v) { return (v > 0) - (v < 0); }

// Golden-section search for the minimum of |h| on [lo, hi].
std::pair<double, double> golden_min(const std::function<double(double)>& h, double lo, double hi) {
  constexpr double kInvPhi = 0.6180339887498949;
  double c = hi - kInvPhi * (hi - lo);
  double d = lo + kInvPhi * (hi - lo);
  double fc = std::abs(h(c)), fd = std::abs(h(d));
  for (int it = 0; it < 200 && hi - lo > 0; ++it) {
    if (fc <= fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - kInvPhi * (hi - lo);
      if (!(c > lo && c < hi)) break;
      fc = std::abs(h(c));
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + kInvPhi * (hi - lo);
      if (!(d > lo && d < hi)) break;
      fd = std::abs(h(d));
    }
  }
  return fc <= fd ? std::pair{c, fc} : std::pair{d, fd};
}

}  // namespace

MvtCertificate find_intermediate_point(const MvtProblem& prob, const MvtOptions& options) {
  if (options.grid < 3) throw std::invalid_argument("scan grid needs at least 3 points");
  const auto& sys = prob.system();
  const auto& ns = prob.node_system();
  const double lo = ns.min();
  const double hi = ns.max();
  const double span = hi - lo;

  MvtCertificate cert;
  cert.tolerance = options.tol;
  cert.node_det_g = prob.node_det_g().resolved();
  cert.node_det_f = prob.node_det_f().resolved();

  if (options.check_regularity) {
    const auto report = regularity_check(sys, options.regularity_grid, Interval{lo, hi});
    if (!report.pass) {
      const auto& fail = *report.failure;
      std::ostringstream msg;
      msg.precision(17);
      msg << "regularity fails: " << fail.reason << " (n = " << fail.n << ", xi = " << fail.xi
          << ", value = " << fail.value << ")";
      throw RegularityError(msg.str(), fail);
    }
    if (sys.interval.a < lo || sys.interval.b > hi)
      cert.warnings.push_back("regularity checked on the node hull only, not on the full declared interval");
  }
  for (const auto& [l, r] : close_node_pairs(ns))
    cert.warnings.push_back("nodes " + std::to_string(l) + " and " + std::to_string(r) +
                            " are closer than 1e-8; confluent columns may be ill-conditioned");

  // Scan the open hull with a small margin at both ends.
  const double delta = 1e-9 * span;
  const int n = options.grid;
  std::vector<double> t(n), h(n);
  double scale = 0.0;
  const double step = (span - 2 * delta) / (n - 1);
  for (int i = 0; i < n; ++i) {
    t[i] = (i == n - 1) ? hi - delta : lo + delta + i * step;
    const auto s = identity_sides(prob, t[i]);
    h[i] = s.lhs - s.rhs;
    scale = std::max({scale, std::abs(s.lhs), std::abs(s.rhs)});
  }
  const auto hfun = [&](double x) {
    const auto s = identity_sides(prob, x);
    return s.lhs - s.rhs;
  };

  const double zero_level = options.tol * scale;
  const bool identically_zero =
      std::all_of(h.begin(), h.end(), [&](double v) { return std::abs(v) <= zero_level; });

  // Leftmost event first: an exact zero on the grid or a sign flip.
  int first_zero = -1;
  for (int i = 0; i < n; ++i) {
    if (h[i] == 0.0) {
      cert.brackets.emplace_back(i > 0 ? t[i - 1] : lo, i + 1 < n ? t[i + 1] : hi);
      if (first_zero < 0 && cert.brackets.size() == 1) first_zero = i;
    } else if (i + 1 < n && h[i + 1] != 0.0 && sign_of(h[i]) != sign_of(h[i + 1])) {
      cert.brackets.emplace_back(t[i], t[i + 1]);
    }
  }

  if (identically_zero) {
    cert.strategy = Strategy::MinimumOfAbs;
    cert.xi = 0.5 * (lo + hi);
    cert.lo = t.front();
    cert.hi = t.back();
  } else if (!cert.brackets.empty()) {
    cert.strategy = Strategy::SignChangeBisection;
    double a = cert.brackets.front().first;
    double b = cert.brackets.front().second;
    if (first_zero >= 0) {
      cert.xi = t[first_zero];
      cert.lo = a;
      cert.hi = b;
    } else {
      double ha = hfun(a);
      const double width = 1e-13 * span;
      double root = std::numeric_limits<double>::quiet_NaN();
      for (int it = 0; it < 400 && b - a > width; ++it) {
        const double mid = 0.5 * (a + b);
        if (!(mid > a && mid < b)) break;
        const double hm = hfun(mid);
        if (hm == 0.0) {
          root = mid;
          break;
        }
        if (sign_of(hm) == sign_of(ha)) {
          a = mid;
          ha = hm;
        } else {
          b = mid;
        }
      }
      cert.lo = a;
      cert.hi = b;
      cert.xi = std::isnan(root) ? 0.5 * (a + b) : root;
    }
  } else {
    const auto best = std::min_element(h.begin(), h.end(),
                                       [](double x, double y) { return std::abs(x) < std::abs(y); });
    const auto i = static_cast<int>(best - h.begin());
    const double left = i > 0 ? t[i - 1] : lo;
    const double right = i + 1 < n ? t[i + 1] : hi;
    double xi = t[i];
    double hmin = std::abs(h[i]);
    const auto [refined, hrefined] = golden_min(hfun, i > 0 ? left : t[0], i + 1 < n ? right : t[n - 1]);
    if (hrefined < hmin) {
      xi = refined;
      hmin = hrefined;
    }
    if (!(hmin <= zero_level)) {
      std::ostringstream msg;
      msg.precision(17);
      msg << "no sign change and min |h| = " << hmin << " at " << xi << " exceeds " << zero_level;
      throw NoRootFound(msg.str(), hmin, xi);
    }
    cert.strategy = Strategy::MinimumOfAbs;
    cert.xi = xi;
    cert.lo = left;
    cert.hi = right;
  }

  const auto s = identity_sides(prob, cert.xi);
  cert.lhs = s.lhs;
  cert.rhs = s.rhs;
  cert.residual = s.lhs == s.rhs ? 0.0 : relative_gap(s.lhs, s.rhs);
  cert.condition = std::max({prob.node_det_f().condition_estimate, prob.node_det_g().condition_estimate,
                             s.xi_det_f.condition_estimate, s.xi_det_g.condition_estimate});
  cert.certified = cert.residual <= options.tol && lo < cert.xi && cert.xi < hi;
  return cert;
}

MvtCertificate cauchy_mvt(const Expr& f, const Expr& g, double a, double b, const MvtOptions& options) {
  if (!(a < b)) throw std::invalid_argument("cauchy_mvt requires a < b");
  auto sys = AnchoredSystem::wronskian({Expr::constant(1.0)}, Interval{a, b});
  const MvtProblem prob(std::move(sys), f, g, Eigen::VectorXd(0), Eigen::VectorXd(0), {a, b});
  return find_intermediate_point(prob, options);
}

namespace {

double factorial(int n) {
  double r = 1.0;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

// (x - a)^j / j!
Expr shifted_power(double a, int j) {
  if (j == 0) return Expr::constant(1.0);
  const Expr base = a == 0.0 ? Expr::variable() : Expr::variable() - a;
  const Expr p = j == 1 ? base : pow(base, j);
  return j <= 1 ? p : p / factorial(j);
}

}  // namespace

TaylorMvtResult taylor_mvt(const Expr& f, double a, double x, int k, const MvtOptions& options) {
  if (!(a < x)) throw std::invalid_argument("taylor_mvt requires a < x");
  if (k < 1) throw std::invalid_argument("taylor_mvt requires k >= 1");

  std::vector<Expr> funcs;
  for (int i = 0; i < k; ++i) funcs.push_back(shifted_power(a, i));
  auto sys = AnchoredSystem::wronskian(std::move(funcs), Interval{a, x});
  std::vector<double> nodes(static_cast<std::size_t>(k), a);
  nodes.push_back(x);
  const MvtProblem prob(std::move(sys), f, shifted_power(a, k), Eigen::VectorXd(0), Eigen::VectorXd(0),
                        std::move(nodes));

  TaylorMvtResult out;
  out.certificate = find_intermediate_point(prob, options);
  const auto at_a = jet_eval(f, a, k - 1);
  double poly = 0.0, power = 1.0;
  for (int i = 0; i < k; ++i) {
    poly += at_a.coeff(i) * power;
    power *= (x - a);
  }
  const double fx = eval(f, x);
  out.taylor_polynomial = poly;
  out.remainder = fx - poly;
  out.lagrange_term = jet_eval(f, out.certificate.xi, k).coeff(k) * power;
  const double denom = std::max({std::abs(fx), std::abs(poly), std::abs(out.lagrange_term), 1e-300});
  out.display_residual = std::abs(fx - poly - out.lagrange_term) / denom;
  return out;
}

DividedDifferenceMvtResult divided_difference_mvt(const Expr& f, std::span<const double> points,
                                                  const MvtOptions& options) {
  if (points.size() < 2) throw std::invalid_argument("need at least two points");
  const int k = static_cast<int>(points.size()) - 1;
  const auto ns = normalize_nodes(points);
  auto sys = AnchoredSystem::wronskian(monomials(k), Interval{ns.min(), ns.max()});
  const MvtProblem prob(std::move(sys), f, pow(Expr::variable(), k), Eigen::VectorXd(0),
                        Eigen::VectorXd(0), std::vector<double>(points.begin(), points.end()));

  DividedDifferenceMvtResult out;
  out.certificate = find_intermediate_point(prob, options);
  out.divided_difference = divdiff_det(f, points).value;
  out.scaled_derivative = jet_eval(f, out.certificate.xi, k).coeff(k);
  out.gap = std::abs(out.divided_difference - out.scaled_derivative);
  return out;
}

RatzRusselResult ratz_russel_mvt(const Expr& f, const Expr& g, std::span<const double> points,
                                 const MvtOptions& options) {
  if (points.size() < 2) throw std::invalid_argument("need at least two points");
  const int k = static_cast<int>(points.size()) - 1;
  const auto ns = normalize_nodes(points);
  if (!is_nonidentical(ns)) throw PreconditionError("points must not all coincide");

  constexpr int kSamples = 257;
  const double lo = ns.min(), hi = ns.max();
  int previous = 0;
  for (int i = 1; i < kSamples - 1; ++i) {
    const double t = lo + (hi - lo) * i / (kSamples - 1);
    const double gk = jet_eval(g, t, k).derivative(k);
    const int s = sign_of(gk);
    if (!(std::abs(gk) >= kRegularityThreshold) || (previous != 0 && s != previous))
      throw DerivativeVanishes("g^(k) vanishes between the nodes (near " + std::to_string(t) + ")");
    previous = s;
  }

  auto sys = AnchoredSystem::wronskian(monomials(k), Interval{lo, hi});
  const MvtProblem prob(std::move(sys), f, g, Eigen::VectorXd(0), Eigen::VectorXd(0),
                        std::vector<double>(points.begin(), points.end()));

  RatzRusselResult out;
  out.certificate = find_intermediate_point(prob, options);
  out.dd_f = divdiff_det(f, points);
  out.dd_g = divdiff_det(g, points);
  out.divided_ratio = out.dd_f.value / out.dd_g.value;
  out.derivative_ratio = jet_eval(f, out.certificate.xi, k).derivative(k) /
                         jet_eval(g, out.certificate.xi, k).derivative(k);
  out.gap = std::abs(out.divided_ratio - out.derivative_ratio);
  return out;
}

MvtProblem exterior_anchor_problem(std::vector<Expr> funcs, Expr f, Expr g, std::vector<double> exterior,
                                   std::vector<double> nodes, Interval interval, int regularity_grid) {
  const int m = static_cast<int>(exterior.size());
  const int k = static_cast<int>(nodes.size()) - 1;
  if (m < 1) throw std::invalid_argument("at least one exterior point is required");
  if (k < 1) throw std::invalid_argument("at least two nodes are required");
  if (funcs.size() != static_cast<std::size_t>(m + k))
    throw DimensionError("expected m + k = " + std::to_string(m + k) + " functions");
  for (double y : exterior)
    if (interval.contains(y)) throw std::invalid_argument("exterior point lies inside [a, b]");

  const auto groups = normalize_nodes(exterior);
  auto collect = [&](const Expr& e) {
    Eigen::VectorXd row(m);
    Eigen::Index c = 0;
    for (std::size_t j = 0; j < groups.size(); ++j) {
      const auto d = jet_eval(e, groups.distinct[j], groups.mults[j] - 1).derivatives();
      row.segment(c, d.size()) = d;
      c += d.size();
    }
    return row;
  };

  AnchoredSystem sys;
  sys.m = m;
  sys.k = k;
  sys.interval = interval;
  sys.anchors.resize(m + k, m);
  for (int i = 0; i < m + k; ++i) sys.anchors.row(i) = collect(funcs[i]).transpose();
  sys.funcs = std::move(funcs);

  const auto report = regularity_check(sys, regularity_grid);
  if (!report.pass) {
    const auto& fail = *report.failure;
    throw RegularityError("bordered Wronskian vanishes: " + fail.reason + " at xi = " +
                              std::to_string(fail.xi),
                          fail);
  }
  Eigen::VectorXd p = collect(f), q = collect(g);
  return MvtProblem(std::move(sys), std::move(f), std::move(g), std::move(p), std::move(q),
                    std::move(nodes));
}

ExteriorSides exterior_sides(std::span<const Expr> funcs, const Expr& f, const Expr& g,
                     std::span<const double> exterior, std::span<const double> nodes, double xi) {
  const auto k = nodes.size() - 1;
  std::vector<double> with_xi(exterior.begin(), exterior.end());
  with_xi.insert(with_xi.end(), k + 1, xi);
  std::vector<double> with_nodes(exterior.begin(), exterior.end());
  with_nodes.insert(with_nodes.end(), nodes.begin(), nodes.end());
  const auto ns_xi = normalize_nodes(with_xi);
  const auto ns_nodes = normalize_nodes(with_nodes);

  auto det = [&](const Expr& last, const NodeSystem& ns) {
    std::vector<Expr> rows(funcs.begin(), funcs.end());
    rows.push_back(last);
    return anchored_det(rows, Eigen::MatrixXd(rows.size(), 0), ns);
  };

  ExteriorSides s;
  s.xi_det_f = det(f, ns_xi);
  s.xi_det_g = det(g, ns_xi);
  s.node_det_f = det(f, ns_nodes);
  s.node_det_g = det(g, ns_nodes);
  s.lhs = s.xi_det_f.resolved() * s.node_det_g.resolved();
  s.rhs = s.xi_det_g.resolved() * s.node_det_f.resolved();
  s.residual = s.lhs == s.rhs ? 0.0 : relative_gap(s.lhs, s.rhs);
  return s;
}

}  // namespace wmvt
