#pragma once

// Locating and certifying the intermediate point of the determinant mean
// value theorem. For a regular anchored system, nonidentical nodes
// x_1..x_{k+1}, vectors p, q and functions f, g there is xi strictly between
// min x_i and max x_i with
//
//   W(w.., f; u.., p)(xi..xi) * W(w.., g; u.., q)(x_1..x_{k+1})
//     = W(w.., g; u.., q)(xi..xi) * W(w.., f; u.., p)(x_1..x_{k+1}).
//
// The solver scans h(xi) = LHS - RHS, bisects the leftmost sign change and
// falls back to the minimum of |h| when h only touches zero.

#include <Eigen/Core>

#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "wmvt/determinant.hpp"
#include "wmvt/divdiff.hpp"
#include "wmvt/expr.hpp"
#include "wmvt/nodes.hpp"

namespace wmvt {

/// Regularity of the system fails somewhere on the node hull.
class RegularityError : public PreconditionError {
 public:
  RegularityError(const std::string& what, RegularityFailure failure)
      : PreconditionError(what), failure_(std::move(failure)) {}
  const RegularityFailure& failure() const { return failure_; }

 private:
  RegularityFailure failure_;
};

/// No sign change and no sufficiently small |h| on the scan grid.
class NoRootFound : public std::runtime_error {
 public:
  NoRootFound(const std::string& what, double grid_min, double argmin)
      : std::runtime_error(what), grid_min_(grid_min), argmin_(argmin) {}
  double grid_min() const { return grid_min_; }
  double argmin() const { return argmin_; }

 private:
  double grid_min_;
  double argmin_;
};

/// g^(k) vanishes somewhere between the nodes.
class DerivativeVanishes : public PreconditionError {
  using PreconditionError::PreconditionError;
};

/// Immutable problem instance; the two node-side determinants are computed
/// once on construction.
class MvtProblem {
 public:
  MvtProblem(AnchoredSystem sys, Expr f, Expr g, Eigen::VectorXd p, Eigen::VectorXd q,
             std::vector<double> nodes);

  const AnchoredSystem& system() const { return sys_; }
  const Expr& f() const { return f_; }
  const Expr& g() const { return g_; }
  const Eigen::VectorXd& p() const { return p_; }
  const Eigen::VectorXd& q() const { return q_; }
  const std::vector<double>& nodes() const { return nodes_; }
  const NodeSystem& node_system() const { return ns_; }

  /// W(w.., g; u.., q)(x_1..x_{k+1}); the constant multiplying the f side.
  const DetResult& node_det_g() const { return det_g_; }
  /// W(w.., f; u.., p)(x_1..x_{k+1}); the constant multiplying the g side.
  const DetResult& node_det_f() const { return det_f_; }

 private:
  AnchoredSystem sys_;
  Expr f_, g_;
  Eigen::VectorXd p_, q_;
  std::vector<double> nodes_;
  NodeSystem ns_;
  DetResult det_f_, det_g_;
};

/// Determinants inside the rounding bound count as zero on both sides.
struct IdentitySides {
  double lhs = 0.0;  // W_f(xi) * A
  double rhs = 0.0;  // W_g(xi) * B
  DetResult xi_det_f;
  DetResult xi_det_g;
};

/// Both sides of the identity at xi, without the interior restriction.
IdentitySides identity_sides(const MvtProblem& prob, double xi);

/// h(xi) = LHS - RHS. Requires min x_i < xi < max x_i (DomainError).
double identity_mismatch(const MvtProblem& prob, double xi);

enum class Strategy { SignChangeBisection, MinimumOfAbs };

const char* to_string(Strategy s);

struct MvtOptions {
  int grid = 1024;
  double tol = 1e-9;
  int regularity_grid = 257;
  bool check_regularity = true;
};

struct MvtCertificate {
  double xi = 0.0;
  double lo = 0.0;
  double hi = 0.0;
  /// |LHS - RHS| / max(|LHS|, |RHS|, 1e-300) at xi.
  double residual = 0.0;
  double lhs = 0.0;
  double rhs = 0.0;
  double node_det_g = 0.0;  // A
  double node_det_f = 0.0;  // B
  Strategy strategy = Strategy::SignChangeBisection;
  /// Worst pivot-ratio estimate among the four determinants.
  double condition = 1.0;
  /// Every sign-change bracket found on the scan grid, left to right.
  std::vector<std::pair<double, double>> brackets;
  std::vector<std::string> warnings;
  double tolerance = 1e-9;
  bool certified = false;
};

/// Throws RegularityError, NoRootFound or DomainError.
MvtCertificate find_intermediate_point(const MvtProblem& prob, const MvtOptions& options = {});

/// k = 1, m = 0, w_1 = 1, nodes (a, b).
MvtCertificate cauchy_mvt(const Expr& f, const Expr& g, double a, double b,
                          const MvtOptions& options = {});

struct TaylorMvtResult {
  MvtCertificate certificate;
  double taylor_polynomial = 0.0;  // sum_{i<k} f^(i)(a)/i! (x-a)^i
  double remainder = 0.0;          // f(x) - taylor_polynomial
  double lagrange_term = 0.0;      // f^(k)(xi)/k! (x-a)^k
  /// |f(x) - polynomial - lagrange| relative to the largest of the three.
  double display_residual = 0.0;
};

/// w_i = (x-a)^(i-1)/(i-1)!, g = (x-a)^k/k!, nodes (a x k, x). Requires a < x, k >= 1.
TaylorMvtResult taylor_mvt(const Expr& f, double a, double x, int k, const MvtOptions& options = {});

struct DividedDifferenceMvtResult {
  MvtCertificate certificate;
  double divided_difference = 0.0;  // [x_1..x_{k+1}]f
  double scaled_derivative = 0.0;   // f^(k)(xi)/k!
  double gap = 0.0;                 // |difference of the two|
};

/// m = 0, monomials 1..x^(k-1), g = x^k.
DividedDifferenceMvtResult divided_difference_mvt(const Expr& f, std::span<const double> points,
                                                  const MvtOptions& options = {});

struct RatzRusselResult {
  MvtCertificate certificate;
  DividedDifference dd_f;
  DividedDifference dd_g;
  double divided_ratio = 0.0;     // [x..]f / [x..]g
  double derivative_ratio = 0.0;  // f^(k)(xi) / g^(k)(xi)
  double gap = 0.0;               // |difference of the two|
};

/// Throws DerivativeVanishes if g^(k) has a zero on ]min, max[ (sampled).
RatzRusselResult ratz_russel_mvt(const Expr& f, const Expr& g, std::span<const double> points,
                                 const MvtOptions& options = {});

/// Anchored problem from m exterior points: u_i, p, q collect w_i, f, g and
/// their derivatives at the grouped exterior points. Throws
/// std::invalid_argument when an exterior point lies in [a, b] and
/// RegularityError when the bordered Wronskians vanish on [a, b].
MvtProblem exterior_anchor_problem(std::vector<Expr> funcs, Expr f, Expr g,
                                   std::vector<double> exterior, std::vector<double> nodes,
                                   Interval interval, int regularity_grid = 257);

struct ExteriorSides {
  double lhs = 0.0;
  double rhs = 0.0;
  double residual = 0.0;  // |lhs - rhs| / max(|lhs|, |rhs|, 1e-300)
  DetResult xi_det_f, xi_det_g;
  DetResult node_det_f, node_det_g;
};

/// Both sides of the exterior-point identity, evaluated directly as plain
/// generalised Wronskians over (y_1..y_m, xi x (k+1)) and (y_1..y_m, x_1..x_{k+1}).
ExteriorSides exterior_sides(std::span<const Expr> funcs, const Expr& f, const Expr& g,
                     std::span<const double> exterior, std::span<const double> nodes, double xi);

double relative_gap(double lhs, double rhs);

}  // namespace wmvt
