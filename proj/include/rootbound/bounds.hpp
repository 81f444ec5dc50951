#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string_view>
#include <utility>
#include <vector>

#include "rootbound/alignment.hpp"
#include "rootbound/bound_value.hpp"

namespace rootbound {

enum class BoundMethod { zero_root, all_roots, inductive, inverse };

inline std::string_view to_string(BoundMethod m) {
  switch (m) {
    case BoundMethod::zero_root: return "zero_root";
    case BoundMethod::all_roots: return "all_roots";
    case BoundMethod::inductive: return "inductive";
    case BoundMethod::inverse: return "inverse";
  }
  return "unknown";
}

/// One deflation step of the inductive bound.
struct TraceLevel {
  int deflated_degree = 0;  // degree after removing the chosen root
  Scalar zeta;              // root removed at this level
  BoundValue kappa;         // deformation radius certified for the step, <= eps
  BoundValue lambda;        // child bound; infinite once the quotient is constant
  BoundValue delta_1;       // all-roots bound evaluated at radius kappa
};

/// An eps -> delta bound (or delta -> eps for method inverse).  Any
/// coefficient deformation strictly below delta_sup satisfies the method's
/// conclusion at epsilon.  epsilon is recorded after clamping, so the
/// certificate states exactly what it certifies.  delta_sup lives in
/// extended range: the inductive value drops below double range from
/// roughly degree 4 upward.
struct DeltaCertificate {
  Real epsilon = 0;
  BoundValue delta_sup;
  BoundMethod method = BoundMethod::zero_root;
  std::vector<TraceLevel> trace;
};

/// For f = a_n z^n exactly and 0 < eps < 1: any deformation strictly below
///   eps^n |a_n| / (2n)
/// keeps every root of the deformed polynomial inside |z| < eps.
inline DeltaCertificate delta_zero_root(const Polynomial& f, Real eps) {
  const int n = f.degree();
  if (n < 1)
    throw std::invalid_argument("delta_zero_root: degree must be at least 1");
  for (int i = 0; i < n; ++i)
    if (!is_exact_zero(f.coeffs()[static_cast<std::size_t>(i)]))
      throw std::invalid_argument(
          "delta_zero_root: polynomial must be exactly a_n z^n");
  if (!(eps > 0) || !(eps < 1))
    throw std::invalid_argument("delta_zero_root: requires 0 < eps < 1");
  const BoundValue delta = BoundValue::from_real(eps).pow_int(n) *
                           BoundValue::from_real(std::abs(f.leading())) /
                           BoundValue::from_real(2.0 * n);
  return {eps, delta, BoundMethod::zero_root, {}};
}

namespace detail {

inline BoundValue all_roots_delta(Real abs_leading, int n, const BoundValue& eps,
                                  Real big_m) {
  return BoundValue::from_real(abs_leading) /
         BoundValue::from_real(2.0 * (n + 1)) *
         (eps / BoundValue::from_real(big_m)).pow_int(n);
}

inline Real root_bound_m(const RootClusters& rc) {
  Real big_m = 1.0;
  for (const RootCluster& c : rc.clusters)
    big_m = std::max(big_m, std::abs(c.center));
  return big_m;
}

}  // namespace detail

/// For 0 < eps < M, M = max(1, |distinct roots|): any deformation strictly
/// below
///   (|a_n| / (2(n+1))) (eps/M)^n
/// leaves some root of the deformed polynomial within eps of every root of f.
inline DeltaCertificate delta_all_roots(const Polynomial& f, Real eps,
                                        const RootOptions& opts = {},
                                        Real cluster_tol = 1e-6) {
  const int n = f.degree();
  if (n < 1)
    throw std::invalid_argument("delta_all_roots: degree must be at least 1");
  if (!(eps > 0))
    throw std::invalid_argument("delta_all_roots: eps must be positive");
  const RootClusters rc = cluster_roots(find_roots(f, opts), cluster_tol);
  const Real big_m = detail::root_bound_m(rc);
  if (!(eps < big_m))
    throw std::invalid_argument(
        "delta_all_roots: requires eps < max(1, root moduli)");
  return {eps,
          detail::all_roots_delta(std::abs(f.leading()), n,
                                  BoundValue::from_real(eps), big_m),
          BoundMethod::all_roots,
          {}};
}

namespace detail {

/// Worst-case growth of the deflated coefficients over the box
/// |u_k - a_k| < kappa, |v - zeta1| < kappa, evaluated at kappa = |zeta1|/2.
///
/// The deflated coefficients are q_i(u, v) = -(1/v^{i+1}) sum_{k<=i} u_k v^k;
/// with r = |zeta1| - kappa <= |v| and R = |zeta1| + kappa the termwise
/// bounds are, for m = i+1-k,
///   |(u_k - a_k) v^{-m}|        <= kappa / r^m
///   |a_k| |v^{-m} - zeta1^{-m}| <= |a_k| m kappa R^{m-1} / (r^m |zeta1|^m).
inline long double deflation_growth_at_cap(const Polynomial& f, Scalar zeta1) {
  const int n = f.degree();
  const long double az = std::abs(zeta1);
  const long double cap = az / 2.0L;
  const long double r = az - cap;
  const long double big_r = az + cap;
  long double worst = 0;
  for (int i = 0; i < n; ++i) {
    long double b = 0;
    for (int k = 0; k <= i; ++k) {
      const int m = i + 1 - k;
      const long double rm = pow_int_ld(r, m);
      b += cap / rm +
           static_cast<long double>(std::abs(f.coeffs()[static_cast<std::size_t>(k)])) *
               m * cap * pow_int_ld(big_r, m - 1) / (rm * pow_int_ld(az, m));
    }
    worst = std::max(worst, b);
  }
  return worst;
}

/// The growth bound is superlinear in kappa (shrinking kappa also widens r),
/// so B(t * cap) <= t * B(cap) for t <= 1 and
///   kappa = cap * lambda / B(cap)
/// certifies the lambda budget directly, at any magnitude of lambda.
inline BoundValue kappa_deflation_ext(const Polynomial& f, Scalar zeta1,
                                      const BoundValue& lambda) {
  const int n = f.degree();
  if (n < 1)
    throw std::invalid_argument("kappa_deflation: degree must be at least 1");
  if (!is_finite(zeta1) || std::abs(zeta1) == 0.0)
    throw std::invalid_argument("kappa_deflation: zeta1 must be nonzero");
  const BoundValue cap = BoundValue::from_real(std::abs(zeta1) / 2.0);
  const long double growth = deflation_growth_at_cap(f, zeta1);
  if (std::isinf(growth) || std::isnan(growth))
    throw std::runtime_error(
        "kappa_deflation: growth bound not representable for this zeta1");
  const BoundValue bcap = BoundValue::from_real(growth);
  if (bcap <= lambda) return cap;
  return cap * lambda / bcap;
}

}  // namespace detail

/// Largest certified kappa in (0, |zeta1|/2] such that perturbing the
/// coefficients and the deflation point by strictly less than kappa moves
/// every deflated coefficient by strictly less than lambda.  lambda may be
/// infinite (no constraint), in which case the cap is returned.
inline Real kappa_deflation(const Polynomial& f, Scalar zeta1, Real lambda) {
  if (std::isnan(lambda) || !(lambda > 0))
    throw std::invalid_argument("kappa_deflation: lambda must be positive");
  const BoundValue l = std::isinf(lambda) ? BoundValue::infinity()
                                          : BoundValue::from_real(lambda);
  return detail::kappa_deflation_ext(f, zeta1, l).as_double();
}

namespace detail {

struct AlignedRecursion {
  BoundValue delta_sup;
  std::vector<TraceLevel> trace;
};

/// Peels the nonzero root of largest modulus, certifies the deflation step,
/// and recurses on the quotient.  Base cases: a pure power a_k z^k (handled
/// by the zero-root bound; the caller's clamp guarantees eps < 1 whenever a
/// zero root exists) and a constant quotient, whose deformation budget is
/// unconstrained (infinite lambda upstream).
inline AlignedRecursion delta_aligned_recurse(const Polynomial& f, Real eps,
                                              const RootClusters& rc,
                                              const RootOptions& opts,
                                              Real cluster_tol) {
  if (f.degree() == 0) return {BoundValue::infinity(), {}};
  if (f.is_pure_power()) return {delta_zero_root(f, eps).delta_sup, {}};

  const RootCluster* chosen = nullptr;
  for (const RootCluster& c : rc.clusters) {
    if (std::abs(c.center) == 0.0) continue;
    if (chosen == nullptr) {
      chosen = &c;
      continue;
    }
    const Real ca = std::abs(c.center), ba = std::abs(chosen->center);
    const bool better =
        ca != ba ? ca > ba
                 : (c.center.real() != chosen->center.real()
                        ? c.center.real() > chosen->center.real()
                        : c.center.imag() > chosen->center.imag());
    if (better) chosen = &c;
  }
  if (chosen == nullptr)
    throw std::runtime_error(
        "delta_aligned: nonzero roots are numerically indistinguishable from zero");

  const Scalar zeta1 = chosen->center;
  const Polynomial fhat = deflate(f, zeta1);
  const RootClusters rc_hat =
      fhat.degree() >= 1 ? cluster_roots(find_roots(fhat, opts), cluster_tol)
                         : RootClusters{};
  AlignedRecursion sub = delta_aligned_recurse(fhat, eps, rc_hat, opts, cluster_tol);

  const BoundValue lambda = sub.delta_sup;
  const BoundValue kappa = BoundValue::min(
      detail::kappa_deflation_ext(f, zeta1, lambda), BoundValue::from_real(eps));
  const BoundValue delta_1 = detail::all_roots_delta(
      std::abs(f.leading()), f.degree(), kappa, detail::root_bound_m(rc));

  AlignedRecursion out;
  out.delta_sup = BoundValue::min(kappa, delta_1);
  out.trace.reserve(sub.trace.size() + 1);
  out.trace.push_back({fhat.degree(), zeta1, kappa, lambda, delta_1});
  out.trace.insert(out.trace.end(), sub.trace.begin(), sub.trace.end());
  return out;
}

}  // namespace detail

/// Full alignment bound: any deformation strictly below delta_sup is
/// eps-aligned to f (per-ball root counts match the multiplicities).
///
/// eps is clamped so the certificate's conditions actually hold:
///   - eps <= separation/2 (distinct root balls stay disjoint),
///   - eps <= min |nonzero root| (the peeled root stays away from zero),
///   - eps < 1 whenever f has a zero root (pure-power base case).
/// The clamped value is recorded in the certificate.
inline DeltaCertificate delta_aligned(const Polynomial& f, Real eps,
                                      const RootOptions& opts = {},
                                      Real cluster_tol = 1e-6) {
  const int n = f.degree();
  if (n < 1)
    throw std::invalid_argument("delta_aligned: degree must be at least 1");
  if (!(eps > 0) || !std::isfinite(eps))
    throw std::invalid_argument("delta_aligned: eps must be positive and finite");

  const RootClusters rc = cluster_roots(find_roots(f, opts), cluster_tol);
  Real eff = eps;
  if (rc.clusters.size() >= 2) eff = std::min(eff, 0.5 * separation(rc));
  for (const RootCluster& c : rc.clusters) {
    const Real a = std::abs(c.center);
    if (a > 0) eff = std::min(eff, a);
  }
  if (f.zero_root_multiplicity() > 0)
    eff = std::min(eff, std::nextafter(Real(1), Real(0)));

  detail::AlignedRecursion rec =
      detail::delta_aligned_recurse(f, eff, rc, opts, cluster_tol);
  const BoundMethod method =
      f.is_pure_power() ? BoundMethod::zero_root : BoundMethod::inductive;
  return {eff, rec.delta_sup, method, std::move(rec.trace)};
}

/// Inverse direction: an eps such that any degree-n polynomial eps-aligned
/// to f matches f's monic coefficients to within delta,
///   max_i |b_i/b_n - a_i/a_n| < delta.
///
/// Built from the Lipschitz bound L_k = C(n,k) k (R+1)^{k-1} for sigma_k on
/// the polydisc of radius R+1, R = max |root|:  eps = min(1, delta/max L_k),
/// further clamped to separation/2 so alignment forces a root-for-root
/// pairing within eps.
inline DeltaCertificate epsilon_inverse(const Polynomial& f, Real delta,
                                        const RootOptions& opts = {},
                                        Real cluster_tol = 1e-6) {
  const int n = f.degree();
  if (n < 1)
    throw std::invalid_argument("epsilon_inverse: degree must be at least 1");
  if (!(delta > 0) || !std::isfinite(delta))
    throw std::invalid_argument("epsilon_inverse: delta must be positive and finite");

  const RootClusters rc = cluster_roots(find_roots(f, opts), cluster_tol);
  Real big_r = 0;
  for (const RootCluster& c : rc.clusters)
    big_r = std::max(big_r, std::abs(c.center));

  Real lip_max = 0;
  Real binom = 1;  // C(n, k), updated multiplicatively
  for (int k = 1; k <= n; ++k) {
    binom = binom * Real(n - k + 1) / Real(k);
    lip_max = std::max(lip_max, binom * Real(k) * pow_int(big_r + 1.0, k - 1));
  }

  Real eps = std::min(Real(1), delta / lip_max);
  if (rc.clusters.size() >= 2) eps = std::min(eps, 0.5 * separation(rc));
  return {eps, BoundValue::from_real(delta), BoundMethod::inverse, {}};
}

/// Conjunction of eps-alignment over a strictly decreasing ladder of radii.
/// Down at the root-finder noise floor this agrees with is_scalar_multiple.
inline bool proportional_iff_always_aligned_check(const Polynomial& f,
                                                  const Polynomial& g,
                                                  std::span<const Real> eps_ladder,
                                                  const RootOptions& opts = {},
                                                  Real cluster_tol = 1e-6,
                                                  Real slack = 0) {
  if (f.degree() != g.degree())
    throw std::invalid_argument(
        "proportional_iff_always_aligned_check: degree mismatch");
  if (eps_ladder.empty())
    throw std::invalid_argument(
        "proportional_iff_always_aligned_check: empty ladder");
  for (std::size_t i = 0; i < eps_ladder.size(); ++i) {
    if (!(eps_ladder[i] > 0))
      throw std::invalid_argument(
          "proportional_iff_always_aligned_check: ladder must be positive");
    if (i > 0 && !(eps_ladder[i] < eps_ladder[i - 1]))
      throw std::invalid_argument(
          "proportional_iff_always_aligned_check: ladder must be strictly decreasing");
  }
  const RootClusters fc = cluster_roots(find_roots(f, opts), cluster_tol);
  const RootSequence gr = find_roots(g, opts);
  for (const Real eps : eps_ladder)
    if (!is_epsilon_aligned(fc, gr, eps, slack).aligned) return false;
  return true;
}

}  // namespace rootbound
