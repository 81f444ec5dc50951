#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "rootbound/errors.hpp"
#include "rootbound/polynomial.hpp"
#include "rootbound/rng.hpp"

namespace rootbound {

struct RootOptions {
  int max_iter = 200;
  Real tol = 1e-12;        // backward-error target, relative to max|a_i| * max(1,|z|)^n
  std::uint64_t seed = 0;  // phase of the starting circle
};

/// All n roots; a root of multiplicity m appears m times.  Order is not
/// part of the contract; this implementation sorts by (re, im).
using RootSequence = std::vector<Scalar>;

struct RootCluster {
  Scalar center;
  int multiplicity = 0;
};

/// Distinct roots with multiplicities; multiplicities sum to the degree.
struct RootClusters {
  std::vector<RootCluster> clusters;

  int total_multiplicity() const {
    int t = 0;
    for (const RootCluster& c : clusters) t += c.multiplicity;
    return t;
  }
};

namespace detail {

inline std::pair<Scalar, Scalar> eval_with_derivative(const std::vector<Scalar>& c,
                                                      Scalar z) {
  Scalar p = c.back();
  Scalar dp(0);
  for (std::size_t i = c.size() - 1; i-- > 0;) {
    dp = dp * z + p;
    p = p * z + c[i];
  }
  return {p, dp};
}

inline Real backward_scale(Real max_abs_coeff, Scalar z, int degree) {
  return max_abs_coeff * pow_int(std::max(Real(1), std::abs(z)), degree);
}

}  // namespace detail

/// Aberth-Ehrlich simultaneous iteration, with the z^k factor removed
/// exactly up front so zero roots never burn iterations.  Every returned
/// root omega satisfies |f(omega)| <= tol * max|a_i| * max(1,|omega|)^n;
/// otherwise a convergence_error carrying the worst residual is thrown.
inline RootSequence find_roots(const Polynomial& f, const RootOptions& opts = {}) {
  const int n = f.degree();
  if (n < 1) throw std::invalid_argument("find_roots: degree must be at least 1");
  if (!(opts.tol > 0)) throw std::invalid_argument("find_roots: tol must be positive");
  if (opts.max_iter < 1)
    throw std::invalid_argument("find_roots: max_iter must be positive");

  const int zeros = f.zero_root_multiplicity();
  RootSequence roots(static_cast<std::size_t>(zeros), Scalar(0));
  const int m = n - zeros;
  if (m == 0) return roots;

  const std::vector<Scalar> c(f.coeffs().begin() + zeros, f.coeffs().end());
  Real max_c = 0;
  for (const Scalar& ci : c) max_c = std::max(max_c, std::abs(ci));

  // Cauchy-style inclusion radius for the starting circle.
  Real low = 0;
  for (std::size_t i = 0; i + 1 < c.size(); ++i) low = std::max(low, std::abs(c[i]));
  const Real radius = 1.0 + low / std::abs(c.back());

  std::mt19937_64 rng = rng_stream(opts.seed, 0);
  const Real phase = kTwoPi * uniform_unit(rng);
  std::vector<Scalar> z(static_cast<std::size_t>(m));
  for (int j = 0; j < m; ++j) {
    const Real angle = phase + kTwoPi * j / m;
    z[static_cast<std::size_t>(j)] =
        radius * Scalar(std::cos(angle), std::sin(angle));
  }

  std::vector<char> settled(static_cast<std::size_t>(m), 0);
  bool all_settled = false;
  for (int it = 0; it < opts.max_iter && !all_settled; ++it) {
    all_settled = true;
    for (int i = 0; i < m; ++i) {
      if (settled[static_cast<std::size_t>(i)]) continue;
      const auto [p, dp] = detail::eval_with_derivative(c, z[static_cast<std::size_t>(i)]);
      if (std::abs(p) <=
          opts.tol * detail::backward_scale(max_c, z[static_cast<std::size_t>(i)], m)) {
        settled[static_cast<std::size_t>(i)] = 1;
        continue;
      }
      all_settled = false;
      // deterministic kick out of critical points and exact collisions
      const Scalar kick =
          std::polar(radius * 1e-3, phase + kTwoPi * (i + 1) / (3.0 * m + 1.0));
      if (std::abs(dp) == 0.0) {
        z[static_cast<std::size_t>(i)] += kick;
        continue;
      }
      const Scalar w = p / dp;
      if (!is_finite(w)) {
        z[static_cast<std::size_t>(i)] += kick;
        continue;
      }
      Scalar repulsion(0);
      bool collided = false;
      for (int j = 0; j < m; ++j) {
        if (j == i) continue;
        const Scalar d = z[static_cast<std::size_t>(i)] - z[static_cast<std::size_t>(j)];
        if (is_exact_zero(d)) {
          collided = true;
          break;
        }
        repulsion += Scalar(1) / d;
      }
      if (collided) {
        z[static_cast<std::size_t>(i)] += kick;
        continue;
      }
      const Scalar denom = Scalar(1) - w * repulsion;
      const Scalar step = (std::abs(denom) == 0.0) ? w : w / denom;
      const Scalar updated = z[static_cast<std::size_t>(i)] - step;
      z[static_cast<std::size_t>(i)] =
          is_finite(updated) ? updated : z[static_cast<std::size_t>(i)] + kick;
    }
  }

  if (!all_settled) {
    // the loop's flags can be stale by one iteration; recheck before failing
    Real worst = 0;
    bool ok = true;
    for (int i = 0; i < m; ++i) {
      const auto [p, dp] = detail::eval_with_derivative(c, z[static_cast<std::size_t>(i)]);
      (void)dp;
      if (std::abs(p) >
          opts.tol * detail::backward_scale(max_c, z[static_cast<std::size_t>(i)], m)) {
        ok = false;
        worst = std::max(worst, std::abs(p));
      }
    }
    if (!ok)
      throw convergence_error("find_roots: no convergence after " +
                                  std::to_string(opts.max_iter) + " iterations",
                              worst);
  }

  // Guarded Newton polish: push the backward error to the double-precision
  // floor instead of stopping at the looser iteration target.
  for (int i = 0; i < m; ++i) {
    for (int step = 0; step < 2; ++step) {
      const auto [p, dp] = detail::eval_with_derivative(c, z[static_cast<std::size_t>(i)]);
      if (std::abs(dp) == 0.0) break;
      const Scalar cand = z[static_cast<std::size_t>(i)] - p / dp;
      if (!is_finite(cand)) break;
      const auto [p2, dp2] = detail::eval_with_derivative(c, cand);
      (void)dp2;
      if (std::abs(p2) <= std::abs(p) &&
          std::abs(p2) <= opts.tol * detail::backward_scale(max_c, cand, m))
        z[static_cast<std::size_t>(i)] = cand;
      else
        break;
    }
  }

  roots.insert(roots.end(), z.begin(), z.end());
  std::sort(roots.begin(), roots.end(), [](const Scalar& a, const Scalar& b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  return roots;
}

/// Single-linkage clustering at distance tol.  Center = arithmetic mean of
/// the members, multiplicity = member count, so multiplicities always sum
/// to the input size.
inline RootClusters cluster_roots(const RootSequence& roots, Real tol = 1e-6) {
  if (!(tol > 0)) throw std::invalid_argument("cluster_roots: tol must be positive");
  const std::size_t n = roots.size();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (std::abs(roots[i] - roots[j]) <= tol) parent[find(i)] = find(j);

  std::vector<Scalar> sum(n, Scalar(0));
  std::vector<int> count(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t r = find(i);
    sum[r] += roots[i];
    count[r] += 1;
  }
  RootClusters out;
  for (std::size_t i = 0; i < n; ++i)
    if (count[i] > 0) out.clusters.push_back({sum[i] / Real(count[i]), count[i]});
  std::sort(out.clusters.begin(), out.clusters.end(),
            [](const RootCluster& a, const RootCluster& b) {
              return a.center.real() != b.center.real()
                         ? a.center.real() < b.center.real()
                         : a.center.imag() < b.center.imag();
            });
  return out;
}

/// Minimum pairwise distance between distinct-root centers.  Half of this
/// is the largest ball radius guaranteeing pairwise disjoint root balls.
inline Real separation(const RootClusters& rc) {
  if (rc.clusters.size() < 2)
    throw std::domain_error(
        "separation: fewer than 2 distinct roots; every epsilon keeps the balls disjoint");
  Real best = std::numeric_limits<Real>::infinity();
  for (std::size_t i = 0; i < rc.clusters.size(); ++i)
    for (std::size_t j = i + 1; j < rc.clusters.size(); ++j)
      best = std::min(best, std::abs(rc.clusters[i].center - rc.clusters[j].center));
  return best;
}

}  // namespace rootbound
