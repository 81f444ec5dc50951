#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "rootbound/errors.hpp"
#include "rootbound/scalar.hpp"

namespace rootbound {

/// Dense univariate polynomial a_0 + a_1 z + ... + a_n z^n over complex
/// doubles, coefficients stored ascending.  The leading coefficient is
/// always nonzero, so degree() is exact; all coefficients are finite.
class Polynomial {
 public:
  explicit Polynomial(std::vector<Scalar> coefficients)
      : coeffs_(std::move(coefficients)) {
    if (coeffs_.empty())
      throw std::invalid_argument("Polynomial: coefficient list is empty");
    for (const Scalar& c : coeffs_)
      if (!is_finite(c))
        throw std::invalid_argument("Polynomial: non-finite coefficient");
    if (std::abs(coeffs_.back()) == 0.0)
      throw std::invalid_argument("Polynomial: leading coefficient is zero");
  }

  /// leading * prod_j (z - roots[j]), expanded one linear factor at a time.
  /// The leading coefficient comes out exact.
  static Polynomial from_roots(Scalar leading, std::span<const Scalar> roots) {
    if (!is_finite(leading) || std::abs(leading) == 0.0)
      throw std::invalid_argument(
          "from_roots: leading coefficient must be finite and nonzero");
    for (const Scalar& r : roots)
      if (!is_finite(r)) throw std::invalid_argument("from_roots: non-finite root");
    std::vector<Scalar> c;
    c.reserve(roots.size() + 1);
    c.push_back(leading);
    for (const Scalar& r : roots) {
      c.push_back(c.back());
      for (std::size_t k = c.size() - 1; k-- > 1;) c[k] = c[k - 1] - r * c[k];
      c[0] = -r * c[0];
    }
    return Polynomial(std::move(c));
  }

  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<Scalar>& coeffs() const noexcept { return coeffs_; }
  Scalar coeff(std::size_t i) const { return coeffs_.at(i); }
  Scalar leading() const noexcept { return coeffs_.back(); }

  /// Horner evaluation.
  Scalar eval(Scalar z) const {
    if (!is_finite(z))
      throw std::invalid_argument("Polynomial::eval: non-finite argument");
    Scalar acc = coeffs_.back();
    for (std::size_t i = coeffs_.size() - 1; i-- > 0;) acc = acc * z + coeffs_[i];
    return acc;
  }
  Scalar operator()(Scalar z) const { return eval(z); }

  Real max_abs_coeff() const {
    Real m = 0;
    for (const Scalar& c : coeffs_) m = std::max(m, std::abs(c));
    return m;
  }

  /// Multiplicity of the root at zero.  Exact test; low-order zeros survive
  /// deflation at nonzero points bit-for-bit, so this stays meaningful
  /// through the whole deflation chain.
  int zero_root_multiplicity() const {
    int k = 0;
    while (k < degree() && is_exact_zero(coeffs_[static_cast<std::size_t>(k)])) ++k;
    return k;
  }

  /// True when the polynomial is exactly a_n z^n.
  bool is_pure_power() const { return zero_root_multiplicity() == degree(); }

  bool operator==(const Polynomial&) const = default;

 private:
  std::vector<Scalar> coeffs_;
};

/// k-th elementary symmetric function of the given values by the triangular
/// recurrence, O(n k).  sigma_0 = 1.
inline Scalar elementary_symmetric(int k, std::span<const Scalar> values) {
  const int n = static_cast<int>(values.size());
  if (k < 0 || k > n)
    throw std::invalid_argument("elementary_symmetric: k out of range");
  for (const Scalar& v : values)
    if (!is_finite(v))
      throw std::invalid_argument("elementary_symmetric: non-finite value");
  std::vector<Scalar> e(static_cast<std::size_t>(k) + 1, Scalar(0));
  e[0] = Scalar(1);
  for (int i = 0; i < n; ++i)
    for (int j = std::min(k, i + 1); j >= 1; --j)
      e[static_cast<std::size_t>(j)] +=
          values[static_cast<std::size_t>(i)] * e[static_cast<std::size_t>(j - 1)];
  return e[static_cast<std::size_t>(k)];
}

/// Coefficients from roots via a_i = a_n (-1)^{n-i} sigma_{n-i}(roots).
/// Agrees with from_roots up to rounding; the two expansions are kept as
/// independent routes on purpose.
inline Polynomial viete_coefficients(std::span<const Scalar> roots, Scalar leading) {
  if (!is_finite(leading) || std::abs(leading) == 0.0)
    throw std::invalid_argument(
        "viete_coefficients: leading coefficient must be finite and nonzero");
  const int n = static_cast<int>(roots.size());
  for (const Scalar& r : roots)
    if (!is_finite(r))
      throw std::invalid_argument("viete_coefficients: non-finite root");
  std::vector<Scalar> e(static_cast<std::size_t>(n) + 1, Scalar(0));
  e[0] = Scalar(1);
  for (int i = 0; i < n; ++i)
    for (int j = std::min(n, i + 1); j >= 1; --j)
      e[static_cast<std::size_t>(j)] +=
          roots[static_cast<std::size_t>(i)] * e[static_cast<std::size_t>(j - 1)];
  std::vector<Scalar> c(static_cast<std::size_t>(n) + 1);
  for (int i = 0; i <= n; ++i) {
    const int k = n - i;
    c[static_cast<std::size_t>(i)] =
        (k % 2 == 0 ? leading : -leading) * e[static_cast<std::size_t>(k)];
  }
  return Polynomial(std::move(c));
}

inline constexpr Real kDeflationResidualTol = 1e-6;

/// Quotient f(z) / (z - zeta) for a (near-)root zeta != 0.  The contract is
/// the closed form q_i = -(1/zeta^{i+1}) sum_{k<=i} a_k zeta^k; the
/// computation runs the equivalent one-pass division in whichever direction
/// is stable for |zeta| (ascending divides by zeta, descending multiplies),
/// and any exact z^k factor passes through bit-for-bit.
/// Rejects zeta = 0 and points whose residual |f(zeta)| exceeds
/// kDeflationResidualTol * max|a_i| * max(1,|zeta|)^n.
inline Polynomial deflate(const Polynomial& f, Scalar zeta) {
  if (!is_finite(zeta)) throw std::invalid_argument("deflate: non-finite zeta");
  if (std::abs(zeta) == 0.0)
    throw std::invalid_argument("deflate: zeta must be nonzero");
  const int n = f.degree();
  if (n < 1) throw std::invalid_argument("deflate: degree must be at least 1");
  const Real residual = std::abs(f.eval(zeta));
  const Real scale =
      f.max_abs_coeff() * pow_int(std::max(Real(1), std::abs(zeta)), n);
  if (residual > kDeflationResidualTol * scale)
    throw deflation_error("deflate: residual |f(zeta)| = " +
                              std::to_string(residual) +
                              " too large; zeta is not close enough to a root",
                          residual);
  const int k = f.zero_root_multiplicity();
  const int d = n - k;
  if (d == 0)
    throw deflation_error("deflate: the polynomial has only the zero root",
                          residual);
  const std::vector<Scalar>& a = f.coeffs();
  std::vector<Scalar> out(static_cast<std::size_t>(n), Scalar(0));
  if (std::abs(zeta) >= 1.0) {
    // ascending recurrence  q_0 = -a_0/zeta,  q_i = -(a_i - q_{i-1})/zeta
    Scalar prev(0);
    for (int i = 0; i < d; ++i) {
      prev = -(a[static_cast<std::size_t>(k + i)] - prev) / zeta;
      out[static_cast<std::size_t>(k + i)] = prev;
    }
  } else {
    // descending synthetic division  q_{d-1} = a_n,  q_{i-1} = a_i + zeta q_i
    out[static_cast<std::size_t>(n - 1)] = a[static_cast<std::size_t>(n)];
    for (int i = d - 1; i >= 1; --i)
      out[static_cast<std::size_t>(k + i - 1)] =
          a[static_cast<std::size_t>(k + i)] +
          zeta * out[static_cast<std::size_t>(k + i)];
  }
  return Polynomial(std::move(out));
}

/// c = b_n/a_n when g is coefficient-wise within tol * max|b_i| of c*f,
/// empty otherwise.
inline std::optional<Scalar> is_scalar_multiple(const Polynomial& f,
                                                const Polynomial& g, Real tol) {
  if (f.degree() != g.degree())
    throw std::invalid_argument("is_scalar_multiple: degree mismatch");
  if (!(tol >= 0))
    throw std::invalid_argument("is_scalar_multiple: tol must be >= 0");
  const Scalar c = g.leading() / f.leading();
  Real worst = 0;
  for (std::size_t i = 0; i < g.coeffs().size(); ++i)
    worst = std::max(worst, std::abs(g.coeffs()[i] - c * f.coeffs()[i]));
  if (worst <= tol * g.max_abs_coeff()) return c;
  return std::nullopt;
}

}  // namespace rootbound
