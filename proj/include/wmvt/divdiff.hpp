#pragma once

#include <span>

#include "wmvt/expr.hpp"
#include "wmvt/nodes.hpp"

namespace wmvt {

enum class DivDiffMethod { DeterminantRatio, Recursive };

struct DividedDifference {
  double value = 0.0;
  int order = 0;  // nodes.total - 1
  NodeSystem nodes;
  DivDiffMethod method = DivDiffMethod::DeterminantRatio;
  /// Recursive method only: the table rerun on absolute values, over |value|.
  /// Roughly how much rounding in the data is amplified; +inf when value == 0.
  double condition = 0.0;
};

struct DivDiffOptions {
  /// Re-centre monomials/coordinates on the node centroid once the node range
  /// exceeds this width. Divided differences are translation invariant.
  double shift_threshold = 10.0;
};

/// [x_1..x_{k+1}]f as W(1, x, ..., x^{k-1}, f) / W(1, x, ..., x^k) over the
/// (possibly confluent) nodes.
DividedDifference divdiff_det(const Expr& f, std::span<const double> points,
                              DivDiffOptions options = {});

/// Classical recursion on sorted points with f^(j)(xi)/j! for confluent runs.
DividedDifference divdiff_recursive(const Expr& f, std::span<const double> points,
                                    DivDiffOptions options = {});

/// 1, x, ..., x^(count-1), optionally in powers of (x - center).
std::vector<Expr> monomials(int count, double center = 0.0);

}  // namespace wmvt
