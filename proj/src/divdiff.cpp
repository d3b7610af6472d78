#include "wmvt/divdiff.hpp"

#include <cmath>
#include <limits>
#include <numeric>

#include "wmvt/determinant.hpp"

namespace wmvt {

namespace {

double centroid_if_wide(const NodeSystem& ns, std::span<const double> points, double threshold) {
  if (ns.max() - ns.min() <= threshold) return 0.0;
  return std::accumulate(points.begin(), points.end(), 0.0) / static_cast<double>(points.size());
}

}  // namespace

std::vector<Expr> monomials(int count, double center) {
  std::vector<Expr> out;
  out.reserve(count);
  const Expr base = center == 0.0 ? Expr::variable() : Expr::variable() - center;
  for (int i = 0; i < count; ++i) out.push_back(i == 0 ? Expr::constant(1.0) : pow(base, i));
  return out;
}

DividedDifference divdiff_det(const Expr& f, std::span<const double> points, DivDiffOptions options) {
  DividedDifference out;
  out.nodes = normalize_nodes(points);
  out.order = out.nodes.total - 1;
  out.method = DivDiffMethod::DeterminantRatio;

  const int k = out.order;
  const double center = centroid_if_wide(out.nodes, points, options.shift_threshold);
  auto basis = monomials(k + 1, center);
  const Eigen::MatrixXd no_anchors(k + 1, 0);

  const double denominator = anchored_det(basis, no_anchors, out.nodes).value;
  if (!(std::abs(denominator) >= kSingularThreshold))
    throw ConditioningError("monomial determinant collapsed to zero");
  basis.back() = f;
  const double numerator = anchored_det(basis, no_anchors, out.nodes).value;
  out.value = numerator / denominator;
  return out;
}

DividedDifference divdiff_recursive(const Expr& f, std::span<const double> points,
                                    DivDiffOptions options) {
  DividedDifference out;
  out.nodes = normalize_nodes(points);
  out.order = out.nodes.total - 1;
  out.method = DivDiffMethod::Recursive;

  const double center = centroid_if_wide(out.nodes, points, options.shift_threshold);
  // Taylor coefficients at each distinct node cover every confluent base case.
  std::vector<double> z;
  std::vector<Eigen::VectorXd> taylor;
  std::vector<int> group;
  for (std::size_t j = 0; j < out.nodes.size(); ++j) {
    taylor.push_back(jet_eval(f, out.nodes.distinct[j], out.nodes.mults[j] - 1).coeffs());
    for (int r = 0; r < out.nodes.mults[j]; ++r) {
      z.push_back(out.nodes.distinct[j] - center);
      group.push_back(static_cast<int>(j));
    }
  }

  // table[i] holds [z_i .. z_{i+level}]f after each sweep.
  const int n = out.nodes.total;
  std::vector<double> table(n), bound(n);
  for (int i = 0; i < n; ++i) {
    table[i] = taylor[group[i]](0);
    bound[i] = std::abs(table[i]);
  }
  for (int level = 1; level < n; ++level) {
    for (int i = 0; i + level < n; ++i) {
      if (group[i] == group[i + level]) {
        table[i] = taylor[group[i]](level);
        bound[i] = std::abs(table[i]);
      } else {
        const double dz = z[i + level] - z[i];
        table[i] = (table[i + 1] - table[i]) / dz;
        bound[i] = (bound[i + 1] + bound[i]) / std::abs(dz);
      }
    }
  }
  out.value = table[0];
  out.condition = out.value == 0.0 ? std::numeric_limits<double>::infinity()
                                   : bound[0] / std::abs(out.value);
  return out;
}

}  // namespace wmvt
