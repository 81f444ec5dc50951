#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string_view>

#include "rootbound/bounds.hpp"

namespace rootbound {

enum class TheoremKind { zero_root, all_roots, aligned, inverse };

inline std::string_view to_string(TheoremKind t) {
  switch (t) {
    case TheoremKind::zero_root: return "zero_root";
    case TheoremKind::all_roots: return "all_roots";
    case TheoremKind::aligned: return "aligned";
    case TheoremKind::inverse: return "inverse";
  }
  return "unknown";
}

/// Slack added to ball-membership checks by the harness, separating genuine
/// bound violations from root-finder noise.  Fixed and reported.
inline constexpr Real kOracleSlack = 1e-7;

struct FuzzReport {
  std::uint64_t trials = 0;
  std::uint64_t violations = 0;
  // min over trials of (certified radius - achieved displacement); negative
  // margins are violations modulo slack
  Real worst_margin = std::numeric_limits<Real>::infinity();
  std::optional<Real> empirical_delta_sup;
  std::uint64_t seed = 0;
  // config echo
  TheoremKind theorem = TheoremKind::aligned;
  Real epsilon = 0;       // eps (or delta, for the inverse direction) as given
  Real safety = 0;
  Real slack = kOracleSlack;
  BoundValue delta_used;  // perturbation radius actually sampled; inductive
                          // bounds can sit below double range, in which case
                          // the only representable deformation is zero
  DeltaCertificate certificate;
  std::vector<Scalar> poly;  // coefficients of the polynomial under test
};

namespace detail {

/// Coefficient-wise perturbation, each draw uniform in the closed disc of
/// the given radius; the leading draw is resampled if it would cancel the
/// leading coefficient (impossible while radius < |a_n|).
inline Polynomial perturb_coefficients(const Polynomial& f, Real radius,
                                       std::mt19937_64& rng) {
  std::vector<Scalar> b = f.coeffs();
  for (std::size_t i = 0; i + 1 < b.size(); ++i) b[i] += uniform_disc(rng, radius);
  for (;;) {
    const Scalar lead = f.leading() + uniform_disc(rng, radius);
    if (std::abs(lead) != 0.0) {
      b.back() = lead;
      break;
    }
  }
  return Polynomial(std::move(b));
}

struct TrialOutcome {
  bool violated = false;
  Real margin = 0;
};

/// Shared context so per-trial work never recomputes f's clusters.
struct FuzzContext {
  const Polynomial& f;
  TheoremKind theorem;
  DeltaCertificate cert;
  RootClusters f_clusters;
  RootSequence f_expanded;          // centers repeated by multiplicity
  std::vector<Scalar> f_monic;      // a_i / a_n
  RootOptions opts;
  Real slack = kOracleSlack;
};

inline FuzzContext make_context(const Polynomial& f, Real eps, TheoremKind theorem,
                                const RootOptions& opts, Real cluster_tol) {
  FuzzContext ctx{f, theorem, {}, {}, {}, {}, opts, kOracleSlack};
  switch (theorem) {
    case TheoremKind::zero_root: ctx.cert = delta_zero_root(f, eps); break;
    case TheoremKind::all_roots: ctx.cert = delta_all_roots(f, eps, opts, cluster_tol); break;
    case TheoremKind::aligned: ctx.cert = delta_aligned(f, eps, opts, cluster_tol); break;
    case TheoremKind::inverse: ctx.cert = epsilon_inverse(f, eps, opts, cluster_tol); break;
  }
  if (theorem != TheoremKind::zero_root)
    ctx.f_clusters = cluster_roots(find_roots(f, opts), cluster_tol);
  for (const RootCluster& c : ctx.f_clusters.clusters)
    ctx.f_expanded.insert(ctx.f_expanded.end(),
                          static_cast<std::size_t>(c.multiplicity), c.center);
  ctx.f_monic.reserve(f.coeffs().size());
  for (const Scalar& a : f.coeffs()) ctx.f_monic.push_back(a / f.leading());
  return ctx;
}

/// One perturbation at the given radius, judged against the certified
/// conclusion.  delta_used is the coefficient radius for the forward
/// directions and the root-perturbation radius for the inverse direction.
inline TrialOutcome run_trial(const FuzzContext& ctx, Real delta_used,
                              std::mt19937_64& rng) {
  TrialOutcome out;
  if (ctx.theorem == TheoremKind::inverse) {
    RootSequence moved = ctx.f_expanded;
    for (Scalar& r : moved) r += uniform_open_disc(rng, delta_used);
    const Real mag = uniform_range(rng, 0.5, 2.0);
    const Real arg = kTwoPi * uniform_unit(rng);
    const Scalar lead = ctx.f.leading() * std::polar(mag, arg);
    const Polynomial g = Polynomial::from_roots(lead, moved);
    Real dev = 0;
    for (std::size_t i = 0; i < g.coeffs().size(); ++i)
      dev = std::max(dev, std::abs(g.coeffs()[i] / g.leading() - ctx.f_monic[i]));
    out.margin = ctx.cert.delta_sup - dev;
    out.violated = dev >= ctx.cert.delta_sup;
    return out;
  }

  const Polynomial g = perturb_coefficients(ctx.f, delta_used, rng);
  const RootSequence gr = find_roots(g, ctx.opts);
  const Real eps = ctx.cert.epsilon;
  switch (ctx.theorem) {
    case TheoremKind::zero_root: {
      Real worst = 0;
      for (const Scalar& w : gr) worst = std::max(worst, std::abs(w));
      out.margin = eps - worst;
      out.violated = worst >= eps + ctx.slack;
      break;
    }
    case TheoremKind::all_roots: {
      Real worst = 0;
      for (const RootCluster& c : ctx.f_clusters.clusters) {
        Real nearest = std::numeric_limits<Real>::infinity();
        for (const Scalar& w : gr)
          nearest = std::min(nearest, std::abs(w - c.center));
        worst = std::max(worst, nearest);
      }
      out.margin = eps - worst;
      out.violated = worst >= eps + ctx.slack;
      break;
    }
    case TheoremKind::aligned: {
      const AlignmentReport rep =
          is_epsilon_aligned(ctx.f_clusters, gr, eps, ctx.slack);
      bool exact = true;
      if (rep.balls_disjoint)
        for (std::size_t j = 0; j < rep.counts.size(); ++j)
          exact = exact &&
                  rep.counts[j] == ctx.f_clusters.clusters[j].multiplicity;
      out.margin = eps - rep.max_displacement;
      out.violated = !(rep.aligned && exact);
      break;
    }
    case TheoremKind::inverse: break;  // handled above
  }
  return out;
}

}  // namespace detail

/// Samples `trials` independent deformations at radius safety * (certified
/// bound) and checks the certified conclusion for each, with per-trial RNG
/// streams derived from (seed, trial index).
///
/// For the forward directions the coefficients are perturbed; for the
/// inverse direction the roots are perturbed within safety * eps and the
/// monic coefficient deviation is checked against delta.
inline FuzzReport fuzz_theorem(const Polynomial& f, Real eps, TheoremKind theorem,
                               std::uint64_t trials, std::uint64_t seed,
                               Real safety = 0.9, const RootOptions& opts = {},
                               Real cluster_tol = 1e-6) {
  if (trials == 0)
    throw std::invalid_argument("fuzz_theorem: trials must be positive");
  if (!(safety > 0))
    throw std::invalid_argument("fuzz_theorem: safety must be positive");

  detail::FuzzContext ctx = detail::make_context(f, eps, theorem, opts, cluster_tol);
  const BoundValue delta_used =
      BoundValue::from_real(safety) * (theorem == TheoremKind::inverse
                                           ? BoundValue::from_real(ctx.cert.epsilon)
                                           : ctx.cert.delta_sup);

  FuzzReport rep;
  rep.trials = trials;
  rep.seed = seed;
  rep.theorem = theorem;
  rep.epsilon = eps;
  rep.safety = safety;
  rep.slack = ctx.slack;
  rep.delta_used = delta_used;
  rep.certificate = ctx.cert;
  rep.poly = f.coeffs();
  const Real radius = delta_used.as_double();
  for (std::uint64_t t = 0; t < trials; ++t) {
    std::mt19937_64 rng = rng_stream(seed, t);
    const detail::TrialOutcome o = detail::run_trial(ctx, radius, rng);
    rep.worst_margin = std::min(rep.worst_margin, o.margin);
    if (o.violated) ++rep.violations;
  }
  return rep;
}

/// Bisection estimate of the largest coefficient radius with zero observed
/// alignment violations.  Starts at the certified bound (which must hold),
/// doubles until a violating level is found, then narrows the bracket; the
/// returned level always satisfies empirical_delta_sup >= certified bound.
///
/// When the certified bound sits below double range (or below the rounding
/// floor where deformations are absorbed into the coefficients outright),
/// the search starts at that floor instead: zero observed violations there
/// is guaranteed by construction, so monotonicity is preserved.
inline FuzzReport estimate_empirical_delta(const Polynomial& f, Real eps,
                                           std::uint64_t trials_per_level,
                                           std::uint64_t seed,
                                           const RootOptions& opts = {},
                                           Real cluster_tol = 1e-6) {
  if (trials_per_level == 0)
    throw std::invalid_argument("estimate_empirical_delta: trials must be positive");

  detail::FuzzContext ctx =
      detail::make_context(f, eps, TheoremKind::aligned, opts, cluster_tol);

  FuzzReport rep;
  rep.seed = seed;
  rep.theorem = TheoremKind::aligned;
  rep.epsilon = eps;
  rep.safety = 1.0;
  rep.slack = ctx.slack;
  rep.certificate = ctx.cert;
  rep.poly = f.coeffs();

  std::uint64_t stream = 0;
  const auto run_level = [&](Real delta) -> std::uint64_t {
    std::uint64_t violations = 0;
    for (std::uint64_t t = 0; t < trials_per_level; ++t) {
      std::mt19937_64 rng = rng_stream(seed, stream++);
      const detail::TrialOutcome o = detail::run_trial(ctx, delta, rng);
      rep.worst_margin = std::min(rep.worst_margin, o.margin);
      ++rep.trials;
      if (o.violated) ++violations;
    }
    rep.violations += violations;
    return violations;
  };

  const Real absorbed_floor = std::ldexp(f.max_abs_coeff(), -60);
  Real good = std::max(ctx.cert.delta_sup.as_double(), absorbed_floor);
  if (run_level(good) > 0)
    throw std::runtime_error(
        "estimate_empirical_delta: violations at the certified bound");

  Real bad = 0;
  for (int i = 0; i < 60; ++i) {
    const Real next = good * 2.0;
    if (run_level(next) > 0) {
      bad = next;
      break;
    }
    good = next;
  }
  if (bad > 0) {
    for (int i = 0; i < 20; ++i) {
      const Real mid = 0.5 * (good + bad);
      if (run_level(mid) > 0)
        bad = mid;
      else
        good = mid;
    }
  }
  rep.delta_used = BoundValue::from_real(good);
  rep.empirical_delta_sup = good;
  return rep;
}

}  // namespace rootbound
