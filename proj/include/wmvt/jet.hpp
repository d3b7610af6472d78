#pragma once

// Truncated Taylor arithmetic. A Jet<Scalar> of order K carries the
// Taylor coefficients c_j = h^(j)(x0) / j! for j = 0..K of some function h
// around a base point x0. Every operation is exact up to the retained order.

#include <Eigen/Core>

#include <cassert>
#include <cmath>
#include <cstdint>
#include <limits>

#include "wmvt/errors.hpp"

namespace wmvt {

template <typename Scalar>
class Jet {
 public:
  using Coeffs = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  Jet() : base_(0), coeffs_(Coeffs::Zero(1)) {}

  Jet(Scalar base, Coeffs coeffs) : base_(base), coeffs_(std::move(coeffs)) {
    assert(coeffs_.size() >= 1);
  }

  static Jet constant(Scalar base, int order, Scalar value) {
    Coeffs c = Coeffs::Zero(order + 1);
    c(0) = value;
    return Jet(base, std::move(c));
  }

  /// The identity function x -> x expanded at `base`.
  static Jet variable(Scalar base, int order) {
    Coeffs c = Coeffs::Zero(order + 1);
    c(0) = base;
    if (order >= 1) c(1) = Scalar(1);
    return Jet(base, std::move(c));
  }

  int order() const { return static_cast<int>(coeffs_.size()) - 1; }
  Scalar base() const { return base_; }
  Scalar value() const { return coeffs_(0); }
  const Coeffs& coeffs() const { return coeffs_; }
  Scalar coeff(int j) const { return coeffs_(j); }

  /// h^(j)(base), i.e. the j-th Taylor coefficient scaled by j!.
  Scalar derivative(int j) const {
    Scalar d = coeffs_(j);
    for (int i = 2; i <= j; ++i) d *= Scalar(i);
    return d;
  }

  /// All raw derivatives h(base), h'(base), ..., h^(K)(base).
  Coeffs derivatives() const {
    Coeffs out(coeffs_.size());
    Scalar fact(1);
    for (Eigen::Index j = 0; j < coeffs_.size(); ++j) {
      if (j > 1) fact *= Scalar(j);
      out(j) = coeffs_(j) * fact;
    }
    return out;
  }

  /// Jet of h' with one order less. Order-0 jets differentiate to zero.
  Jet differentiated() const {
    const int k = order();
    if (k == 0) return constant(base_, 0, Scalar(0));
    Coeffs c(k);
    for (int j = 0; j < k; ++j) c(j) = Scalar(j + 1) * coeffs_(j + 1);
    return Jet(base_, std::move(c));
  }

  Jet operator-() const { return Jet(base_, -coeffs_); }

  Jet& operator+=(const Jet& o) {
    coeffs_ += o.coeffs_;
    return *this;
  }
  Jet& operator-=(const Jet& o) {
    coeffs_ -= o.coeffs_;
    return *this;
  }
  Jet& operator*=(Scalar s) {
    coeffs_ *= s;
    return *this;
  }

  friend Jet operator+(Jet a, const Jet& b) { return a += b; }
  friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
  friend Jet operator*(Jet a, Scalar s) { return a *= s; }
  friend Jet operator*(Scalar s, Jet a) { return a *= s; }

  friend Jet operator*(const Jet& a, const Jet& b) {
    assert(a.order() == b.order());
    const int k = a.order();
    Coeffs c = Coeffs::Zero(k + 1);
    for (int n = 0; n <= k; ++n) {
      Scalar s(0);
      for (int j = 0; j <= n; ++j) s += a.coeffs_(j) * b.coeffs_(n - j);
      c(n) = s;
    }
    return Jet(a.base_, std::move(c));
  }

  friend Jet operator/(const Jet& a, const Jet& b) {
    assert(a.order() == b.order());
    const Scalar b0 = b.coeffs_(0);
    if (b0 == Scalar(0)) throw DomainError("division by zero");
    const int k = a.order();
    Coeffs c(k + 1);
    for (int n = 0; n <= k; ++n) {
      Scalar s = a.coeffs_(n);
      for (int j = 1; j <= n; ++j) s -= b.coeffs_(j) * c(n - j);
      c(n) = s / b0;
    }
    return Jet(a.base_, std::move(c));
  }

 private:
  Scalar base_;
  Coeffs coeffs_;
};

template <typename Scalar>
Jet<Scalar> exp(const Jet<Scalar>& a) {
  const int k = a.order();
  typename Jet<Scalar>::Coeffs e(k + 1);
  e(0) = std::exp(a.coeff(0));
  for (int n = 1; n <= k; ++n) {
    Scalar s(0);
    for (int j = 1; j <= n; ++j) s += Scalar(j) * a.coeff(j) * e(n - j);
    e(n) = s / Scalar(n);
  }
  return Jet<Scalar>(a.base(), std::move(e));
}

template <typename Scalar>
Jet<Scalar> log(const Jet<Scalar>& a) {
  const Scalar a0 = a.coeff(0);
  if (!(a0 > Scalar(0))) throw DomainError("log of non-positive value");
  const int k = a.order();
  typename Jet<Scalar>::Coeffs l(k + 1);
  l(0) = std::log(a0);
  for (int n = 1; n <= k; ++n) {
    Scalar s(0);
    for (int j = 1; j < n; ++j) s += Scalar(j) * l(j) * a.coeff(n - j);
    l(n) = (a.coeff(n) - s / Scalar(n)) / a0;
  }
  return Jet<Scalar>(a.base(), std::move(l));
}

namespace detail {

// sin and cos share one recurrence.
template <typename Scalar>
void sincos(const Jet<Scalar>& a, typename Jet<Scalar>::Coeffs& s,
            typename Jet<Scalar>::Coeffs& c) {
  const int k = a.order();
  s.resize(k + 1);
  c.resize(k + 1);
  s(0) = std::sin(a.coeff(0));
  c(0) = std::cos(a.coeff(0));
  for (int n = 1; n <= k; ++n) {
    Scalar ss(0), cc(0);
    for (int j = 1; j <= n; ++j) {
      ss += Scalar(j) * a.coeff(j) * c(n - j);
      cc += Scalar(j) * a.coeff(j) * s(n - j);
    }
    s(n) = ss / Scalar(n);
    c(n) = -cc / Scalar(n);
  }
}

}  // namespace detail

template <typename Scalar>
Jet<Scalar> sin(const Jet<Scalar>& a) {
  typename Jet<Scalar>::Coeffs s, c;
  detail::sincos(a, s, c);
  return Jet<Scalar>(a.base(), std::move(s));
}

template <typename Scalar>
Jet<Scalar> cos(const Jet<Scalar>& a) {
  typename Jet<Scalar>::Coeffs s, c;
  detail::sincos(a, s, c);
  return Jet<Scalar>(a.base(), std::move(c));
}

template <typename Scalar>
Jet<Scalar> sqrt(const Jet<Scalar>& a) {
  const Scalar a0 = a.coeff(0);
  const int k = a.order();
  if (a0 < Scalar(0) || (k > 0 && a0 == Scalar(0)))
    throw DomainError("sqrt outside its differentiable domain");
  typename Jet<Scalar>::Coeffs r(k + 1);
  r(0) = std::sqrt(a0);
  for (int n = 1; n <= k; ++n) {
    Scalar s = a.coeff(n);
    for (int j = 1; j < n; ++j) s -= r(j) * r(n - j);
    r(n) = s / (Scalar(2) * r(0));
  }
  return Jet<Scalar>(a.base(), std::move(r));
}

/// Integer powers use repeated squaring; anything else goes through exp/log.
template <typename Scalar>
Jet<Scalar> pow(const Jet<Scalar>& a, Scalar exponent) {
  constexpr Scalar kMaxIntegral = Scalar(1u << 30);
  if (exponent >= Scalar(0) && exponent <= kMaxIntegral &&
      std::floor(exponent) == exponent) {
    auto n = static_cast<std::uint32_t>(exponent);
    Jet<Scalar> result = Jet<Scalar>::constant(a.base(), a.order(), Scalar(1));
    Jet<Scalar> sq = a;
    while (n != 0) {
      if (n & 1u) result = result * sq;
      n >>= 1;
      if (n != 0) sq = sq * sq;
    }
    return result;
  }
  if (!(a.coeff(0) > Scalar(0)))
    throw DomainError("non-integer power of non-positive value");
  return exp(log(a) * exponent);
}

}  // namespace wmvt
