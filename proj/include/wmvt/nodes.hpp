#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace wmvt {

/// A point multiset grouped into distinct sorted nodes with multiplicities.
/// Confluence is decided by exact equality.
struct NodeSystem {
  std::vector<double> distinct;  // strictly increasing
  std::vector<int> mults;        // all >= 1
  int total = 0;                 // sum of mults
  /// grouped[i] == input[permutation[i]]; ties keep input order.
  std::vector<std::size_t> permutation;

  std::size_t size() const { return distinct.size(); }
  double min() const { return distinct.front(); }
  double max() const { return distinct.back(); }

  /// The grouped sequence (xi_1 x k_1, ..., xi_n x k_n).
  std::vector<double> expanded() const;

  friend bool operator==(const NodeSystem&, const NodeSystem&) = default;
};

/// Throws std::invalid_argument on empty or non-finite input.
NodeSystem normalize_nodes(std::span<const double> points);

/// A single node repeated `count` times.
NodeSystem coincident_nodes(double point, int count);

/// True iff at least two distinct points are present.
bool is_nonidentical(const NodeSystem& ns);

/// Adjacent distinct nodes closer than `threshold`. Such clusters make the
/// confluent columns nearly dependent; callers use this for warnings only.
std::vector<std::pair<double, double>> close_node_pairs(const NodeSystem& ns,
                                                        double threshold = 1e-8);

}  // namespace wmvt
