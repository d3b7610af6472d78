#include "wmvt/determinant.hpp"

#include <cmath>
#include <sstream>

namespace wmvt {

void AnchoredSystem::validate() const {
  if (m < 0) throw DimensionError("m must be non-negative");
  if (k < 1) throw DimensionError("k must be at least 1");
  const auto rows = static_cast<std::size_t>(m + k);
  if (funcs.size() != rows)
    throw DimensionError("expected " + std::to_string(rows) + " functions, got " +
                         std::to_string(funcs.size()));
  if (anchors.rows() != static_cast<Eigen::Index>(rows) || anchors.cols() != m)
    throw DimensionError("anchor matrix must be (m+k) x m");
  if (!(interval.a < interval.b)) throw DimensionError("interval requires a < b");
}

AnchoredSystem AnchoredSystem::wronskian(std::vector<Expr> funcs, Interval interval) {
  AnchoredSystem sys;
  sys.m = 0;
  sys.k = static_cast<int>(funcs.size());
  sys.anchors = Eigen::MatrixXd(sys.k, 0);
  sys.funcs = std::move(funcs);
  sys.interval = interval;
  sys.validate();
  return sys;
}

Eigen::MatrixXd anchored_matrix(std::span<const Expr> funcs, const Eigen::MatrixXd& anchors,
                                const NodeSystem& ns) {
  const auto rows = static_cast<Eigen::Index>(funcs.size());
  const Eigen::Index m = anchors.cols();
  if (anchors.rows() != rows) throw DimensionError("one anchor row per function is required");
  if (m + ns.total != rows)
    throw DimensionError("matrix is not square: " + std::to_string(rows) + " rows, " +
                         std::to_string(m + ns.total) + " columns");

  Eigen::MatrixXd out(rows, rows);
  out.leftCols(m) = anchors;
  for (Eigen::Index i = 0; i < rows; ++i) {
    Eigen::Index col = m;
    for (std::size_t j = 0; j < ns.distinct.size(); ++j) {
      const int order = ns.mults[j] - 1;
      try {
        const auto d = jet_eval(funcs[i], ns.distinct[j], order).derivatives();
        out.row(i).segment(col, order + 1) = d.transpose();
      } catch (const DomainError& e) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "function " << i + 1 << " (" << funcs[i].to_string() << ") at node "
            << ns.distinct[j] << ": " << e.what();
        throw DomainError(msg.str());
      }
      col += order + 1;
    }
  }
  return out;
}

DetResult anchored_det(std::span<const Expr> funcs, const Eigen::MatrixXd& anchors,
                       const NodeSystem& ns, DetOptions options) {
  return lu_determinant(anchored_matrix(funcs, anchors, ns), options);
}

namespace {

std::vector<Expr> concat(std::span<const Expr> a, std::span<const Expr> b) {
  std::vector<Expr> out(a.begin(), a.end());
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

Eigen::MatrixXd stack_anchors(const AnchoredSystem& sys, std::size_t extra_count,
                              const Eigen::MatrixXd& extra) {
  if (extra.rows() != static_cast<Eigen::Index>(extra_count))
    throw DimensionError("one extra anchor row per extra function is required");
  if (extra_count > 0 && extra.cols() != sys.m)
    throw DimensionError("extra anchors must have m coordinates");
  Eigen::MatrixXd out(sys.anchors.rows() + extra.rows(), sys.m);
  out.topRows(sys.anchors.rows()) = sys.anchors;
  if (extra_count > 0) out.bottomRows(extra.rows()) = extra;
  return out;
}

}  // namespace

Eigen::MatrixXd assemble_matrix(const AnchoredSystem& sys, std::span<const Expr> extra_funcs,
                                const Eigen::MatrixXd& extra_anchors, const NodeSystem& ns) {
  sys.validate();
  const auto funcs = concat(sys.funcs, extra_funcs);
  return anchored_matrix(funcs, stack_anchors(sys, extra_funcs.size(), extra_anchors), ns);
}

DetResult w_det(const AnchoredSystem& sys, std::span<const Expr> extra_funcs,
                const Eigen::MatrixXd& extra_anchors, const NodeSystem& ns, DetOptions options) {
  return lu_determinant(assemble_matrix(sys, extra_funcs, extra_anchors, ns), options);
}

double wronskian_at(std::span<const Expr> funcs, double xi) {
  if (funcs.empty()) return 1.0;
  const auto ns = coincident_nodes(xi, static_cast<int>(funcs.size()));
  return anchored_det(funcs, Eigen::MatrixXd(funcs.size(), 0), ns).value;
}

double leading_minor(const AnchoredSystem& sys, int n, double xi) {
  if (n < 0 || n > sys.k) throw std::out_of_range("leading minor index out of range");
  if (n == 0) {
    if (sys.m == 0) return 1.0;
    return lu_determinant(sys.anchors.topRows(sys.m)).value;
  }
  const auto rows = static_cast<std::size_t>(sys.m + n);
  const std::span<const Expr> funcs(sys.funcs.data(), rows);
  return anchored_det(funcs, sys.anchors.topRows(rows), coincident_nodes(xi, n)).value;
}

RegularityReport regularity_check(const AnchoredSystem& sys, int grid_count,
                                  std::optional<Interval> over) {
  sys.validate();
  if (grid_count < 2) throw std::invalid_argument("regularity grid needs at least 2 points");
  RegularityReport report;
  report.checked = over.value_or(sys.interval);
  report.grid_count = grid_count;
  report.min_abs.assign(sys.k, std::numeric_limits<double>::infinity());
  report.argmin.assign(sys.k, report.checked.a);

  auto fail = [&](int n, double xi, double value, std::string reason) {
    if (!report.failure) report.failure = RegularityFailure{n, xi, value, std::move(reason)};
    report.pass = false;
  };

  report.v0 = leading_minor(sys, 0, report.checked.a);
  if (!(std::abs(report.v0) >= kRegularityThreshold))
    fail(0, report.checked.a, report.v0, "anchor vectors u_1..u_m are linearly dependent");

  const double a = report.checked.a;
  const double h = report.checked.width() / (grid_count - 1);
  for (int n = 1; n <= sys.k; ++n) {
    double previous = std::numeric_limits<double>::quiet_NaN();
    for (int i = 0; i < grid_count; ++i) {
      const double xi = (i == grid_count - 1) ? report.checked.b : a + i * h;
      double v = 0;
      try {
        v = leading_minor(sys, n, xi);
      } catch (const DomainError& e) {
        fail(n, xi, std::numeric_limits<double>::quiet_NaN(), e.what());
        previous = std::numeric_limits<double>::quiet_NaN();
        continue;
      }
      if (std::abs(v) < report.min_abs[n - 1]) {
        report.min_abs[n - 1] = std::abs(v);
        report.argmin[n - 1] = xi;
      }
      if (std::abs(v) < kRegularityThreshold)
        fail(n, xi, v, "V_" + std::to_string(n) + " vanishes");
      else if (std::isfinite(previous) && (previous > 0) != (v > 0))
        fail(n, xi, v, "V_" + std::to_string(n) + " changes sign");
      previous = v;
    }
  }
  return report;
}

}  // namespace wmvt
