#include "wmvt/quasiops.hpp"

#include <Eigen/LU>

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "wmvt/oracle.hpp"

namespace wmvt {

JetFunction as_jet_function(const Expr& f) {
  return [f](double x, int order) { return jet_eval(f, x, order); };
}

VanishingSpec make_vanishing_spec(std::span<const double> points, Interval interval) {
  VanishingSpec spec;
  spec.nodes = normalize_nodes(points);
  spec.interval = interval;
  if (!(interval.a < interval.b)) throw std::invalid_argument("interval requires a < b");
  for (double p : points)
    if (!interval.contains(p)) throw std::invalid_argument("vanishing point outside the interval");
  spec.below_b = spec.nodes.min() < interval.b;
  spec.above_a = spec.nodes.max() > interval.a;
  return spec;
}

bool vanishes_times(const JetFunction& f, const VanishingSpec& spec, double tol) {
  if (!spec.below_b || !spec.above_a) return false;

  constexpr int kSamples = 257;
  double grid_max = 0.0;
  const double h = spec.interval.width() / (kSamples - 1);
  for (int i = 0; i < kSamples; ++i) {
    try {
      grid_max = std::max(grid_max, std::abs(f(spec.interval.a + i * h, 0).value()));
    } catch (const DomainError&) {
    }
  }
  const double bound = tol * (1.0 + grid_max);

  for (std::size_t i = 0; i < spec.nodes.size(); ++i) {
    const auto d = f(spec.nodes.distinct[i], spec.nodes.mults[i] - 1).derivatives();
    for (Eigen::Index j = 0; j < d.size(); ++j)
      if (!(std::abs(d(j)) <= bound)) return false;
  }
  return true;
}

bool vanishes_times(const Expr& f, const VanishingSpec& spec, double tol) {
  return vanishes_times(as_jet_function(f), spec, tol);
}

OperatorTable build_operator_table(const AnchoredSystem& sys) {
  sys.validate();
  OperatorTable table;
  table.sys = sys;
  table.gammas = Eigen::MatrixXd::Zero(sys.m, sys.k);
  if (sys.m == 0) {
    table.vfuncs.assign(sys.funcs.begin(), sys.funcs.end());
    return table;
  }

  const Eigen::MatrixXd basis = sys.anchors.topRows(sys.m);  // row i is u_i
  const double v0 = lu_determinant(basis).value;
  if (!(std::abs(v0) >= kRegularityThreshold))
    throw PreconditionError("anchor vectors u_1..u_m are linearly dependent (V_0 = 0)");

  const Eigen::PartialPivLU<Eigen::MatrixXd> lu(basis.transpose());
  for (int n = 1; n <= sys.k; ++n) {
    const Eigen::VectorXd target = -sys.anchors.row(sys.m + n - 1).transpose();
    const Eigen::VectorXd gamma = lu.solve(target);
    table.gammas.col(n - 1) = gamma;
    table.residual = std::max(table.residual, (basis.transpose() * gamma - target).cwiseAbs().maxCoeff());

    Expr v = sys.funcs[sys.m + n - 1];
    for (int i = 0; i < sys.m; ++i) v = v + gamma(i) * sys.funcs[i];
    table.vfuncs.push_back(v);
  }
  return table;
}

namespace {

void check_index(const AnchoredSystem& sys, int n) {
  if (n < 0 || n > sys.k) throw std::out_of_range("operator index n must lie in 0..k");
}

std::vector<Expr> bordered_funcs(const AnchoredSystem& sys, int n, const Expr& f) {
  std::vector<Expr> funcs(sys.funcs.begin(), sys.funcs.begin() + sys.m + n);
  funcs.push_back(f);
  return funcs;
}

Eigen::MatrixXd bordered_anchors(const AnchoredSystem& sys, int n) {
  Eigen::MatrixXd anchors = Eigen::MatrixXd::Zero(sys.m + n + 1, sys.m);
  anchors.topRows(sys.m + n) = sys.anchors.topRows(sys.m + n);
  return anchors;
}

}  // namespace

DetResult ww_n_det(const AnchoredSystem& sys, int n, const Expr& f, double xi) {
  sys.validate();
  check_index(sys, n);
  return anchored_det(bordered_funcs(sys, n, f), bordered_anchors(sys, n), coincident_nodes(xi, n + 1));
}

double ww_n_unchecked(const AnchoredSystem& sys, int n, const Expr& f, double xi) {
  return ww_n_det(sys, n, f, xi).value;
}

double ww_n(const AnchoredSystem& sys, int n, const Expr& f, double xi) {
  check_index(sys, n);
  const bool inside = n < sys.k ? sys.interval.contains(xi) : sys.interval.contains_open(xi);
  if (!inside) throw DomainError("xi outside the domain of WW_n");
  return ww_n_unchecked(sys, n, f, xi);
}

Jet<double> ww_n_jet(const AnchoredSystem& sys, int n, const Expr& f, double xi, int order) {
  sys.validate();
  check_index(sys, n);
  using J = Jet<double>;
  const auto funcs = bordered_funcs(sys, n, f);
  const Eigen::MatrixXd anchors = bordered_anchors(sys, n);
  const int dim = sys.m + n + 1;

  // Entry (i, m + j) is w_i^(j)(xi + t); its t-expansion has coefficients
  // w_i^(j+r)(xi) / r!.
  std::vector<J> entries;
  entries.reserve(static_cast<std::size_t>(dim) * dim);
  for (int i = 0; i < dim; ++i) {
    for (int c = 0; c < sys.m; ++c) entries.push_back(J::constant(xi, order, anchors(i, c)));
    const auto d = jet_eval(funcs[i], xi, n + order).derivatives();
    for (int j = 0; j <= n; ++j) {
      J::Coeffs coeffs(order + 1);
      double inv_fact = 1.0;
      for (int r = 0; r <= order; ++r) {
        if (r > 1) inv_fact /= r;
        coeffs(r) = d(j + r) * inv_fact;
      }
      entries.emplace_back(xi, std::move(coeffs));
    }
  }
  return laplace_determinant(entries, dim, J::constant(xi, order, 0.0), J::constant(xi, order, 1.0));
}

double ww_n_recursive(const AnchoredSystem& sys, int n, const Expr& f, double xi) {
  sys.validate();
  if (n < 1 || n > sys.k) throw std::out_of_range("recursive operator index n must lie in 1..k");

  const double v_prev = leading_minor(sys, n - 1, xi);
  if (!(std::abs(v_prev) >= kRegularityThreshold))
    throw ConditioningError("V_" + std::to_string(n - 1) + " vanishes near xi");

  auto quotient = [&](double t) {
    const double vn = leading_minor(sys, n, t);
    if (!(std::abs(vn) >= kRegularityThreshold))
      throw ConditioningError("V_" + std::to_string(n) + " vanishes in the difference stencil");
    return ww_n_unchecked(sys, n - 1, f, t) / vn;
  };
  auto central = [&](double h) { return (quotient(xi + h) - quotient(xi - h)) / (2.0 * h); };

  const double h = std::max(1e-6, 1e-6 * std::abs(xi));
  const double derivative = (4.0 * central(h / 2.0) - central(h)) / 3.0;
  const double vn = leading_minor(sys, n, xi);
  if (!(std::abs(vn) >= kRegularityThreshold))
    throw ConditioningError("V_" + std::to_string(n) + " vanishes at xi");
  return derivative * vn * vn / v_prev;
}

ZeroCount ww_zero_count(const AnchoredSystem& sys, int n, const Expr& f, const NodeSystem& f_zeros,
                        int grid) {
  sys.validate();
  check_index(sys, n);
  if (grid < 2) throw std::invalid_argument("zero count grid needs at least 2 points");
  ZeroCount count;

  const Interval& iv = sys.interval;
  std::vector<int> multiplicity(f_zeros.size(), 0);
  for (std::size_t i = 0; i < f_zeros.size(); ++i) {
    const double z = f_zeros.distinct[i];
    if (!iv.contains(z)) continue;
    const int order = f_zeros.mults[i];
    const auto jet = ww_n_jet(sys, n, f, z, order);
    const double scale = jet.coeffs().cwiseAbs().maxCoeff();
    int mult = 0;
    while (mult <= order && std::abs(jet.coeff(mult)) <= 1e-12 * scale) ++mult;
    multiplicity[i] = std::min(mult, order);
    count.at_nodes += multiplicity[i];
  }

  // Split the interval at the known zeros and scan each open piece. Across a
  // known zero the sign must flip exactly when its multiplicity is odd; a
  // parity mismatch means another zero sits between the zero and the
  // neighbouring samples.
  std::vector<double> cuts{iv.a};
  std::vector<int> cut_mult{0};
  for (std::size_t i = 0; i < f_zeros.size(); ++i) {
    const double z = f_zeros.distinct[i];
    if (iv.contains_open(z)) {
      cuts.push_back(z);
      cut_mult.push_back(multiplicity[i]);
    }
  }
  cuts.push_back(iv.b);
  cut_mult.push_back(0);

  struct Piece {
    int first_sign = 0;
    int last_sign = 0;
  };
  std::vector<Piece> pieces;
  std::vector<std::vector<double>> values;
  double vmax = 0.0;
  for (std::size_t p = 0; p + 1 < cuts.size(); ++p) {
    const double len = cuts[p + 1] - cuts[p];
    const int samples = std::max(8, static_cast<int>(std::ceil(grid * len / iv.width())));
    std::vector<double> v(samples);
    for (int i = 0; i < samples; ++i) {
      v[i] = ww_n_unchecked(sys, n, f, cuts[p] + (i + 0.5) * len / samples);
      vmax = std::max(vmax, std::abs(v[i]));
    }
    values.push_back(std::move(v));
  }
  const double near_zero = 1e-12 * vmax;

  for (const auto& v : values) {
    Piece piece;
    int last_sign = 0;
    bool in_zero_run = false;
    for (double value : v) {
      if (std::abs(value) <= near_zero) {
        if (!in_zero_run) ++count.elsewhere;
        in_zero_run = true;
        last_sign = 0;
        continue;
      }
      const int sign = value > 0 ? 1 : -1;
      if (last_sign != 0 && sign != last_sign) ++count.elsewhere;
      if (piece.first_sign == 0) piece.first_sign = sign;
      in_zero_run = false;
      last_sign = sign;
    }
    piece.last_sign = last_sign;
    pieces.push_back(piece);
  }

  for (std::size_t c = 1; c + 1 < cuts.size(); ++c) {
    const int left = pieces[c - 1].last_sign;
    const int right = pieces[c].first_sign;
    if (left == 0 || right == 0) continue;
    const bool flips = left != right;
    if (flips != (cut_mult[c] % 2 == 1)) ++count.elsewhere;
  }
  return count;
}

}  // namespace wmvt
