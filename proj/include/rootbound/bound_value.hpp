#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <stdexcept>
#include <string>

namespace rootbound {

/// Strictly positive magnitude with an extended binary exponent: mantissa in
/// [0.5, 1) plus a 64-bit power of two.  The inductive deformation bound
/// collapses roughly like eps^(n!) in the degree, far beyond the range of
/// any hardware float, while certificates still need exact positivity and
/// ordering.  Only what the bound recursion uses exists here: multiply,
/// divide, integer power, min, comparisons.  Within double range the
/// mantissa roundings coincide with plain double arithmetic, so values that
/// fit in a double come out bit-identical to the direct computation.
class BoundValue {
 public:
  BoundValue() : frac_(0.5), exp_(1) {}  // 1.0

  static BoundValue from_real(double v) {
    if (!(v > 0) || std::isinf(v) || std::isnan(v))
      throw std::invalid_argument("BoundValue: requires a positive finite real");
    BoundValue b;
    int e = 0;
    b.frac_ = std::frexp(v, &e);
    b.exp_ = e;
    return b;
  }

  static BoundValue from_real(long double v) {
    if (!(v > 0) || std::isinf(v) || std::isnan(v))
      throw std::invalid_argument("BoundValue: requires a positive finite real");
    BoundValue b;
    int e = 0;
    b.frac_ = static_cast<double>(std::frexp(v, &e));
    b.exp_ = e;
    b.normalize();
    return b;
  }

  static BoundValue infinity() {
    BoundValue b;
    b.frac_ = std::numeric_limits<double>::infinity();
    b.exp_ = 0;
    return b;
  }

  bool is_infinite() const { return std::isinf(frac_); }

  /// Nearest double; underflows to 0 (or overflows to inf) outside range.
  double as_double() const {
    if (is_infinite()) return std::numeric_limits<double>::infinity();
    if (exp_ > 1100) return std::numeric_limits<double>::infinity();
    if (exp_ < -1100) return 0.0;
    return std::ldexp(frac_, static_cast<int>(exp_));
  }

  double fraction() const { return frac_; }
  std::int64_t exponent2() const { return exp_; }

  double log10_value() const {
    return std::log10(frac_) + static_cast<double>(exp_) * 0.301029995663981195;
  }

  /// Decimal form for values outside double range, e.g. "1.8345e-11158".
  std::string to_decimal_string() const {
    if (is_infinite()) return "inf";
    const double l10 = log10_value();
    const double e = std::floor(l10);
    const double m = std::pow(10.0, l10 - e);
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6ge%+.0f", m, e);
    return buf;
  }

  friend BoundValue operator*(const BoundValue& a, const BoundValue& b) {
    if (a.is_infinite() || b.is_infinite()) return infinity();
    BoundValue r;
    r.frac_ = a.frac_ * b.frac_;
    r.exp_ = a.exp_ + b.exp_;
    r.normalize();
    return r;
  }

  friend BoundValue operator/(const BoundValue& a, const BoundValue& b) {
    if (b.is_infinite())
      throw std::invalid_argument("BoundValue: division by infinity");
    if (a.is_infinite()) return infinity();
    BoundValue r;
    r.frac_ = a.frac_ / b.frac_;
    r.exp_ = a.exp_ - b.exp_;
    r.normalize();
    return r;
  }

  BoundValue pow_int(int n) const {
    BoundValue r;
    for (int i = 0; i < n; ++i) r = r * *this;
    return r;
  }

  friend bool operator<(const BoundValue& a, const BoundValue& b) {
    if (a.is_infinite()) return false;
    if (b.is_infinite()) return true;
    if (a.exp_ != b.exp_) return a.exp_ < b.exp_;
    return a.frac_ < b.frac_;
  }
  friend bool operator<=(const BoundValue& a, const BoundValue& b) { return !(b < a); }
  friend bool operator>(const BoundValue& a, const BoundValue& b) { return b < a; }
  friend bool operator>=(const BoundValue& a, const BoundValue& b) { return !(a < b); }
  friend bool operator==(const BoundValue& a, const BoundValue& b) {
    if (a.is_infinite() || b.is_infinite())
      return a.is_infinite() && b.is_infinite();
    return a.frac_ == b.frac_ && a.exp_ == b.exp_;
  }

  static BoundValue min(const BoundValue& a, const BoundValue& b) {
    return b < a ? b : a;
  }

 private:
  void normalize() {
    int e = 0;
    frac_ = std::frexp(frac_, &e);
    exp_ += e;
    // saturate instead of wrapping at absurd degrees
    constexpr std::int64_t lim = std::int64_t{1} << 62;
    if (exp_ > lim) exp_ = lim;
    if (exp_ < -lim) exp_ = -lim;
  }

  double frac_;
  std::int64_t exp_;
};

}  // namespace rootbound
