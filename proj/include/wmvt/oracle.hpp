#pragma once

// Cofactor (Laplace) expansion. This shares no code with the pivoted LU in
// determinant.hpp and serves as its independent reference. It works over any
// commutative ring type with +, -, * (doubles and jets alike).

#include <Eigen/Core>

#include <bit>
#include <cassert>
#include <cstdint>
#include <vector>

namespace wmvt {

/// Determinant of the n x n row-major matrix `a`, expanded along successive
/// rows with memoisation over the set of consumed columns.
template <typename T>
T laplace_determinant(const std::vector<T>& a, int n, const T& zero, const T& one) {
  assert(static_cast<int>(a.size()) == n * n);
  assert(n < 24);
  if (n == 0) return one;
  const std::uint32_t full = (std::uint32_t{1} << n) - 1;
  std::vector<T> memo(std::size_t{1} << n, zero);
  memo[full] = one;

  // Visit masks in decreasing popcount so every successor is ready.
  for (int used = n - 1; used >= 0; --used) {
    for (std::uint32_t mask = 0; mask < full; ++mask) {
      if (std::popcount(mask) != used) continue;
      const int row = used;
      T acc = zero;
      int free_index = 0;
      for (int c = 0; c < n; ++c) {
        const std::uint32_t bit = std::uint32_t{1} << c;
        if (mask & bit) continue;
        const T& entry = a[static_cast<std::size_t>(row) * n + c];
        const T term = entry * memo[mask | bit];
        if (free_index % 2 == 0)
          acc = acc + term;
        else
          acc = acc - term;
        ++free_index;
      }
      memo[mask] = acc;
    }
  }
  return memo[0];
}

inline double cofactor_determinant(const Eigen::MatrixXd& m) {
  assert(m.rows() == m.cols());
  const int n = static_cast<int>(m.rows());
  std::vector<double> a(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a[static_cast<std::size_t>(i) * n + j] = m(i, j);
  return laplace_determinant(a, n, 0.0, 1.0);
}

}  // namespace wmvt
