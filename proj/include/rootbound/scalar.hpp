#pragma once

#include <cmath>
#include <complex>
#include <numbers>

namespace rootbound {

using Real = double;
using Scalar = std::complex<double>;

inline constexpr Real kTwoPi = 2.0 * std::numbers::pi_v<double>;

inline bool is_finite(const Scalar& s) {
  return std::isfinite(s.real()) && std::isfinite(s.imag());
}

/// Exact-zero test (signed zeros accepted).  Degree bookkeeping and the
/// pure-power case split rely on this being exact, never tolerance-based.
inline bool is_exact_zero(const Scalar& s) {
  return s.real() == 0.0 && s.imag() == 0.0;
}

/// Integer power by repeated multiplication.  Keeps powers of exactly
/// representable bases exact, which std::pow does not guarantee.
inline Real pow_int(Real base, int exponent) {
  Real r = 1.0;
  for (int i = 0; i < exponent; ++i) r *= base;
  return r;
}

inline long double pow_int_ld(long double base, int exponent) {
  long double r = 1.0L;
  for (int i = 0; i < exponent; ++i) r *= base;
  return r;
}

}  // namespace rootbound
