#include "wmvt/nodes.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace wmvt {

std::vector<double> NodeSystem::expanded() const {
  std::vector<double> out;
  out.reserve(total);
  for (std::size_t i = 0; i < distinct.size(); ++i) out.insert(out.end(), mults[i], distinct[i]);
  return out;
}

NodeSystem normalize_nodes(std::span<const double> points) {
  if (points.empty()) throw std::invalid_argument("node sequence is empty");
  for (double p : points)
    if (!std::isfinite(p)) throw std::invalid_argument("node sequence contains a non-finite value");

  NodeSystem ns;
  ns.permutation.resize(points.size());
  std::iota(ns.permutation.begin(), ns.permutation.end(), std::size_t{0});
  std::stable_sort(ns.permutation.begin(), ns.permutation.end(),
                   [&](std::size_t i, std::size_t j) { return points[i] < points[j]; });

  for (std::size_t idx : ns.permutation) {
    const double p = points[idx];
    if (!ns.distinct.empty() && ns.distinct.back() == p) {
      ++ns.mults.back();
    } else {
      ns.distinct.push_back(p);
      ns.mults.push_back(1);
    }
  }
  ns.total = static_cast<int>(points.size());
  return ns;
}

NodeSystem coincident_nodes(double point, int count) {
  if (count < 1) throw std::invalid_argument("coincident node count must be positive");
  const std::vector<double> pts(static_cast<std::size_t>(count), point);
  return normalize_nodes(pts);
}

bool is_nonidentical(const NodeSystem& ns) { return ns.distinct.size() >= 2; }

std::vector<std::pair<double, double>> close_node_pairs(const NodeSystem& ns, double threshold) {
  std::vector<std::pair<double, double>> out;
  for (std::size_t i = 1; i < ns.distinct.size(); ++i)
    if (ns.distinct[i] - ns.distinct[i - 1] < threshold) out.emplace_back(ns.distinct[i - 1], ns.distinct[i]);
  return out;
}

}  // namespace wmvt
