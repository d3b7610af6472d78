#include "wmvt/random.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <stdexcept>

namespace wmvt {

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

std::string random_polynomial_text(SampleRng& rng, int degree, double coeff_bound) {
  std::string out;
  for (int j = 0; j <= degree; ++j) {
    double c = rng.uniform(-coeff_bound, coeff_bound);
    if (j == degree && std::abs(c) < 0.1) c = c < 0 ? -0.1 : 0.1;
    if (j > 0) out += " + ";
    out += format_double(c);
    if (j == 1) out += "*x";
    if (j > 1) out += "*x^" + std::to_string(j);
  }
  return out;
}

RandomFunction random_function(SampleRng& rng) {
  auto coef = [&](double lo, double hi) { return format_double(rng.uniform(lo, hi)); };
  switch (rng.integer(0, 4)) {
    case 0: {
      const int degree = rng.integer(0, 6);
      return {random_polynomial_text(rng, degree), degree};
    }
    case 1:
      return {coef(0.5, 2) + "*exp(" + coef(-2, 2) + "*x)"};
    case 2:
      return {coef(0.5, 2) + "*sin(" + coef(-3, 3) + "*x + " + coef(-1, 1) + ")"};
    case 3:
      return {coef(0.5, 2) + "*cos(" + coef(-3, 3) + "*x + " + coef(-1, 1) + ")"};
    default:
      return {"(" + random_polynomial_text(rng, rng.integer(0, 2)) + ")*exp(" + coef(-1, 1) + "*x)"};
  }
}

std::vector<double> random_nodes(SampleRng& rng, int count, int distinct, double lo, double hi,
                                 double min_gap) {
  if (count < 1 || distinct < 1 || distinct > count)
    throw std::invalid_argument("invalid node counts");
  if ((distinct - 1) * min_gap > hi - lo) throw std::invalid_argument("nodes cannot be that far apart");

  std::vector<double> values;
  for (int attempt = 0; attempt < 1000 && static_cast<int>(values.size()) < distinct; ++attempt) {
    const double v = rng.uniform(lo, hi);
    const bool clear = std::all_of(values.begin(), values.end(),
                                   [&](double w) { return std::abs(v - w) >= min_gap; });
    if (clear) values.push_back(v);
  }
  if (static_cast<int>(values.size()) < distinct) {
    // Crowded: fall back to an even spread.
    values.clear();
    for (int i = 0; i < distinct; ++i)
      values.push_back(distinct == 1 ? 0.5 * (lo + hi) : lo + (hi - lo) * i / (distinct - 1));
  }

  std::vector<double> out(values.begin(), values.end());
  while (static_cast<int>(out.size()) < count) out.push_back(values[rng.integer(0, distinct - 1)]);
  for (int i = count - 1; i > 0; --i) std::swap(out[i], out[rng.integer(0, i)]);
  return out;
}

}  // namespace wmvt
