#pragma once

// Quasi-differential operators built by bordering an anchored system.
//
//   WW_n(f)(xi) = W(w_1..w_{m+n}, f; u_1..u_{m+n}, 0)(xi, ..., xi)   (n+1 copies)
//
// WW_n is an n-th order linear differential operator whose leading coefficient
// is V_n, and it satisfies
//
//   WW_n(f) = d/dxi (WW_{n-1}(f) / V_n) * V_n^2 / V_{n-1}.
//
// V_0 is det(u_1..u_m) for m > 0 and 1 for m == 0, which keeps WW_0(f) = V_0 f.

#include <Eigen/Core>

#include <functional>
#include <span>
#include <vector>

#include "wmvt/determinant.hpp"
#include "wmvt/expr.hpp"
#include "wmvt/jet.hpp"
#include "wmvt/nodes.hpp"

namespace wmvt {

/// A function known through its Taylor jets: (point, order) -> jet.
using JetFunction = std::function<Jet<double>(double, int)>;

JetFunction as_jet_function(const Expr& f);

/// Zeros (with multiplicities) that a function should have inside an interval.
struct VanishingSpec {
  NodeSystem nodes;
  Interval interval;
  bool below_b = false;  // smallest node < b
  bool above_a = false;  // largest node > a

  int count() const { return nodes.total; }
};

/// Throws std::invalid_argument if a point lies outside the interval.
VanishingSpec make_vanishing_spec(std::span<const double> points, Interval interval);

inline constexpr double kVanishingTolerance = 1e-9;

/// True iff f^(j)(x_i) vanishes (relative to 1 + max|f| on the interval) for
/// every j < k_i and the zeros are not all piled up at one endpoint.
bool vanishes_times(const Expr& f, const VanishingSpec& spec, double tol = kVanishingTolerance);
bool vanishes_times(const JetFunction& f, const VanishingSpec& spec,
                    double tol = kVanishingTolerance);

struct OperatorTable {
  AnchoredSystem sys;
  /// gammas(i, n-1) solves -u_{m+n} = sum_i gamma_{i,n} u_i.
  Eigen::MatrixXd gammas;
  /// v_n = w_{m+n} + sum_i gamma_{i,n} w_i, index n - 1.
  std::vector<Expr> vfuncs;
  /// Largest |U^T gamma_n + u_{m+n}| over n.
  double residual = 0.0;
};

/// Throws PreconditionError if u_1..u_m are (numerically) dependent.
OperatorTable build_operator_table(const AnchoredSystem& sys);

/// WW_n(f)(xi). Requires 0 <= n <= k (std::out_of_range) and xi in [a,b]
/// for n < k, xi in ]a,b[ for n == k (DomainError).
double ww_n(const AnchoredSystem& sys, int n, const Expr& f, double xi);

/// WW_n(f) without the interval restriction on xi.
double ww_n_unchecked(const AnchoredSystem& sys, int n, const Expr& f, double xi);

/// The bordered determinant behind ww_n_unchecked, with its diagnostics.
DetResult ww_n_det(const AnchoredSystem& sys, int n, const Expr& f, double xi);

/// Taylor expansion of xi -> WW_n(f)(xi) around `xi` up to `order`.
Jet<double> ww_n_jet(const AnchoredSystem& sys, int n, const Expr& f, double xi, int order);

/// WW_n(f)(xi) via the recursion from WW_{n-1}, differentiating numerically
/// (central difference, h = max(1e-6, 1e-6|xi|), one Richardson step).
/// Throws ConditioningError when V_n or V_{n-1} falls below 1e-12 near xi.
double ww_n_recursive(const AnchoredSystem& sys, int n, const Expr& f, double xi);

struct ZeroCount {
  int at_nodes = 0;       // multiplicities measured at the supplied nodes
  int elsewhere = 0;      // sign changes and near-zero runs away from them
  int total() const { return at_nodes + elsewhere; }
};

/// Lower bound on the number of zeros (with multiplicity) of WW_n(f) on the
/// system interval. Multiplicities at the known zeros of f are read from the
/// Taylor jet of WW_n(f). Between them, a scan of about `grid` points counts
/// sign changes (a near-zero run counts once), plus one zero beside each known
/// zero whose sign behaviour disagrees with the parity of its multiplicity.
ZeroCount ww_zero_count(const AnchoredSystem& sys, int n, const Expr& f, const NodeSystem& f_zeros,
                        int grid = 2048);

}  // namespace wmvt
