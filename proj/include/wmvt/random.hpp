#pragma once

// Seeded generators for random test instances. mt19937_64 has a fully
// specified output sequence and the uniform mapping below avoids the
// implementation-defined std distributions, so draws are reproducible
// across standard libraries.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "wmvt/expr.hpp"

namespace wmvt {

class SampleRng {
 public:
  explicit SampleRng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on [0, 1).
  double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }
  /// Uniform integer in [lo, hi].
  int integer(int lo, int hi) {
    return lo + static_cast<int>(engine_() % static_cast<std::uint64_t>(hi - lo + 1));
  }
  bool coin(double p = 0.5) { return unit() < p; }

 private:
  std::mt19937_64 engine_;
};

struct RandomFunction {
  std::string text;
  /// Degree when the function is a polynomial, -1 otherwise.
  int poly_degree = -1;
  Expr expr() const { return parse(text); }
};

/// A random smooth function: polynomials of degree <= 6 with coefficients in
/// [-2, 2], scaled exp/sin/cos of affine arguments, or a low-degree
/// polynomial times an exponential.
RandomFunction random_function(SampleRng& rng);

/// Random polynomial text of exactly the given degree.
std::string random_polynomial_text(SampleRng& rng, int degree, double coeff_bound = 2.0);

/// `count` points in [lo, hi]: `distinct` different values at least
/// `min_gap` apart, the rest repeating them, returned in shuffled order.
std::vector<double> random_nodes(SampleRng& rng, int count, int distinct, double lo = -1.0,
                                 double hi = 1.0, double min_gap = 1e-2);

/// Shortest round-trip decimal text of a double.
std::string format_double(double v);

}  // namespace wmvt
