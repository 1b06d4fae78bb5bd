#pragma once

#include <complex>

namespace cgeom {

/// Complex value with its two first partials along u1 and u2.
///
/// Forward-mode AD over C: the parameters are real, so conj commutes with
/// differentiation and every holomorphic function obeys the usual chain rule.
struct DualScalar {
  std::complex<double> value{};
  std::complex<double> d_u1{};
  std::complex<double> d_u2{};

  DualScalar() = default;
  DualScalar(std::complex<double> v) : value(v) {}  // NOLINT: constants promote implicitly
  DualScalar(std::complex<double> v, std::complex<double> a, std::complex<double> b)
      : value(v), d_u1(a), d_u2(b) {}

  static DualScalar variable_u1(double u) { return {u, 1.0, 0.0}; }
  static DualScalar variable_u2(double u) { return {u, 0.0, 1.0}; }

  DualScalar& operator+=(const DualScalar& o) {
    value += o.value;
    d_u1 += o.d_u1;
    d_u2 += o.d_u2;
    return *this;
  }
  DualScalar& operator-=(const DualScalar& o) {
    value -= o.value;
    d_u1 -= o.d_u1;
    d_u2 -= o.d_u2;
    return *this;
  }
  DualScalar& operator*=(const DualScalar& o) {
    d_u1 = value * o.d_u1 + d_u1 * o.value;
    d_u2 = value * o.d_u2 + d_u2 * o.value;
    value *= o.value;
    return *this;
  }
  /// Caller checks o.value != 0.
  DualScalar& operator/=(const DualScalar& o) {
    const std::complex<double> inv = 1.0 / o.value;
    d_u1 = (d_u1 - value * inv * o.d_u1) * inv;
    d_u2 = (d_u2 - value * inv * o.d_u2) * inv;
    value *= inv;
    return *this;
  }

  friend DualScalar operator+(DualScalar a, const DualScalar& b) { return a += b; }
  friend DualScalar operator-(DualScalar a, const DualScalar& b) { return a -= b; }
  friend DualScalar operator*(DualScalar a, const DualScalar& b) { return a *= b; }
  friend DualScalar operator/(DualScalar a, const DualScalar& b) { return a /= b; }
  friend DualScalar operator-(const DualScalar& a) { return {-a.value, -a.d_u1, -a.d_u2}; }
};

/// Applies f to the value and scales both partials by f'(value).
inline DualScalar chain(const DualScalar& x, std::complex<double> fx, std::complex<double> dfx) {
  return {fx, dfx * x.d_u1, dfx * x.d_u2};
}

inline DualScalar exp(const DualScalar& x) {
  const auto e = std::exp(x.value);
  return chain(x, e, e);
}
inline DualScalar sin(const DualScalar& x) { return chain(x, std::sin(x.value), std::cos(x.value)); }
inline DualScalar cos(const DualScalar& x) { return chain(x, std::cos(x.value), -std::sin(x.value)); }
/// Principal branch; the caller rejects value == 0 where the derivative is undefined.
inline DualScalar sqrt(const DualScalar& x) {
  const auto r = std::sqrt(x.value);
  return chain(x, r, 0.5 / r);
}
inline DualScalar conj(const DualScalar& x) {
  return {std::conj(x.value), std::conj(x.d_u1), std::conj(x.d_u2)};
}

}  // namespace cgeom
