#pragma once

// Anchored functional determinants. For functions w_1..w_r, anchor vectors
// u_1..u_r in R^m and a node system with distinct nodes xi_j of multiplicity
// k_j, row i of the matrix is
//
//   u_i1 ... u_im | w_i(xi_1) ... w_i^(k_1-1)(xi_1) | ... | w_i(xi_n) ... w_i^(k_n-1)(xi_n)
//
// and the matrix must be square (r == m + total multiplicity). With m == 0
// this is the generalised Wronskian; with all nodes equal it is the classic
// Wronski determinant. Derivative entries are raw derivatives, not scaled by
// factorials.

#include <Eigen/Core>
#include <Eigen/LU>

#include <cmath>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "wmvt/errors.hpp"
#include "wmvt/expr.hpp"
#include "wmvt/nodes.hpp"

namespace wmvt {

struct Interval {
  double a = 0.0;
  double b = 1.0;
  double width() const { return b - a; }
  bool contains(double x) const { return a <= x && x <= b; }
  bool contains_open(double x) const { return a < x && x < b; }
};

/// Functions w_1..w_{m+k}, anchors u_1..u_{m+k} in R^m (rows of `anchors`)
/// and the interval they live on.
struct AnchoredSystem {
  int m = 0;
  int k = 1;
  std::vector<Expr> funcs;
  Eigen::MatrixXd anchors;  // (m + k) x m
  Interval interval;

  /// Throws DimensionError if the shapes disagree or a <= b fails.
  void validate() const;

  /// Pure Wronskian system (m == 0) of the given functions.
  static AnchoredSystem wronskian(std::vector<Expr> funcs, Interval interval);
};

template <typename Scalar>
struct BasicDetResult {
  Scalar value = Scalar(0);
  /// Largest over smallest pivot magnitude; +inf when singular.
  Scalar condition_estimate = Scalar(1);
  int matrix_dim = 0;
  /// Set when a zero pivot occurred or |value| < 1e-300 (value is then 0).
  bool singular = false;
  /// Rough bound on the absolute rounding error, 8 n eps prod_i |row_i|.
  Scalar rounding_bound = Scalar(0);

  /// The value, or 0 when it is indistinguishable from rounding noise.
  Scalar resolved() const { return std::abs(value) <= rounding_bound ? Scalar(0) : value; }
};

using DetResult = BasicDetResult<double>;

struct DetOptions {
  /// Scale each row by its largest magnitude before factorising and undo the
  /// scaling afterwards. Helps with tight confluent clusters; off by default so
  /// the plain path stays bit-reproducible.
  bool equilibrate_rows = false;
};

inline constexpr double kSingularThreshold = 1e-300;

/// Determinant by LU with partial pivoting (permutation sign included).
template <typename Derived>
BasicDetResult<typename Derived::Scalar> lu_determinant(const Eigen::MatrixBase<Derived>& matrix,
                                                        DetOptions options = {}) {
  using Scalar = typename Derived::Scalar;
  using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  BasicDetResult<Scalar> out;
  out.matrix_dim = static_cast<int>(matrix.rows());
  if (matrix.rows() != matrix.cols()) throw DimensionError("determinant of a non-square matrix");
  if (matrix.rows() == 0) {
    out.value = Scalar(1);
    return out;
  }

  Mat work = matrix;
  Scalar hadamard(1);
  for (Eigen::Index i = 0; i < work.rows(); ++i) hadamard *= work.row(i).norm();
  out.rounding_bound = Scalar(8) * Scalar(work.rows()) * std::numeric_limits<Scalar>::epsilon() * hadamard;
  Scalar scale(1);
  if (options.equilibrate_rows) {
    for (Eigen::Index i = 0; i < work.rows(); ++i) {
      const Scalar row_max = work.row(i).cwiseAbs().maxCoeff();
      if (row_max == Scalar(0)) {
        out.value = Scalar(0);
        out.singular = true;
        out.condition_estimate = std::numeric_limits<Scalar>::infinity();
        return out;
      }
      work.row(i) /= row_max;
      scale *= row_max;
    }
  }

  const Eigen::PartialPivLU<Mat> lu(work);
  const auto pivots = lu.matrixLU().diagonal().cwiseAbs();
  const Scalar largest = pivots.maxCoeff();
  const Scalar smallest = pivots.minCoeff();
  out.value = lu.determinant() * scale;
  if (smallest == Scalar(0) || !(std::abs(out.value) >= Scalar(kSingularThreshold))) {
    out.value = Scalar(0);
    out.singular = true;
    out.condition_estimate = std::numeric_limits<Scalar>::infinity();
    return out;
  }
  out.condition_estimate = largest / smallest;
  return out;
}

/// Square matrix of an anchored system over `ns`. `anchors` has one row per
/// function; its column count is m (zero columns for Wronskians).
Eigen::MatrixXd anchored_matrix(std::span<const Expr> funcs, const Eigen::MatrixXd& anchors,
                                const NodeSystem& ns);

DetResult anchored_det(std::span<const Expr> funcs, const Eigen::MatrixXd& anchors,
                       const NodeSystem& ns, DetOptions options = {});

/// Matrix of w_1..w_{m+k}, extra_funcs with anchors u_1..u_{m+k}, extra_anchors.
Eigen::MatrixXd assemble_matrix(const AnchoredSystem& sys, std::span<const Expr> extra_funcs,
                                const Eigen::MatrixXd& extra_anchors, const NodeSystem& ns);

DetResult w_det(const AnchoredSystem& sys, std::span<const Expr> extra_funcs,
                const Eigen::MatrixXd& extra_anchors, const NodeSystem& ns,
                DetOptions options = {});

/// Wronski determinant of `funcs` at a single point.
double wronskian_at(std::span<const Expr> funcs, double xi);

/// V_0 = det(u_1..u_m) for n == 0 (1 when m == 0), otherwise
/// V_n(xi) = W(w_1..w_{m+n}; u_1..u_{m+n})(xi, ..., xi).
double leading_minor(const AnchoredSystem& sys, int n, double xi);

struct RegularityFailure {
  int n = 0;  // 0 refers to the anchor determinant
  double xi = 0.0;
  double value = 0.0;
  std::string reason;
};

struct RegularityReport {
  bool pass = true;
  double v0 = 1.0;
  /// min |V_n| over the grid and where it occurred, index n - 1.
  std::vector<double> min_abs;
  std::vector<double> argmin;
  std::optional<RegularityFailure> failure;
  Interval checked;
  int grid_count = 0;
};

inline constexpr double kRegularityThreshold = 1e-12;

/// Samples V_0 and V_1..V_k on a uniform grid over `over` (defaults to the
/// system interval). A sample below 1e-12 in magnitude, a sign flip between
/// neighbouring samples, or a domain error all count as failures.
RegularityReport regularity_check(const AnchoredSystem& sys, int grid_count,
                                  std::optional<Interval> over = std::nullopt);

}  // namespace wmvt
