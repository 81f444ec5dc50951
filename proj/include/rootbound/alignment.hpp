#pragma once

#include <algorithm>
#include <stdexcept>
#include <utility>
#include <vector>

#include "rootbound/roots.hpp"

namespace rootbound {

/// Open ball B(center, radius); membership is strict.
struct Ball {
  Scalar center;
  Real radius;

  Ball(Scalar c, Real r) : center(c), radius(r) {
    if (!(r > 0)) throw std::invalid_argument("Ball: radius must be positive");
  }
  bool contains(const Scalar& z) const { return std::abs(z - center) < radius; }
};

struct AlignmentReport {
  std::vector<int> counts;       // g-roots strictly inside each root ball of f
  bool aligned = false;          // counts[j] >= multiplicity[j] for all j
  bool balls_disjoint = false;   // eps <= separation/2
  std::vector<int> permutation;  // g-root index assigned to each f-root slot
  Real max_displacement = 0;     // bottleneck value of that assignment
};

/// True iff every coefficient of g is strictly within delta of the matching
/// coefficient of f.
inline bool is_delta_deformation(const Polynomial& f, const Polynomial& g,
                                 Real delta) {
  if (f.degree() != g.degree())
    throw std::invalid_argument("is_delta_deformation: degree mismatch");
  if (!(delta > 0))
    throw std::invalid_argument("is_delta_deformation: delta must be positive");
  Real worst = 0;
  for (std::size_t i = 0; i < f.coeffs().size(); ++i)
    worst = std::max(worst, std::abs(g.coeffs()[i] - f.coeffs()[i]));
  return worst < delta;
}

/// Sufficient disjointness condition eps <= separation/2 (with equality
/// allowed); vacuously true for fewer than two clusters.
inline bool balls_disjoint(const RootClusters& rc, Real eps) {
  if (!(eps > 0)) throw std::invalid_argument("balls_disjoint: eps must be positive");
  if (rc.clusters.size() < 2) return true;
  return eps <= 0.5 * separation(rc);
}

/// Permutation minimizing the largest pairwise displacement between the two
/// sequences, by binary search over the n^2 candidate distances with a
/// bipartite-matching feasibility test.  The returned value is one of the
/// pairwise distances and equals the brute-force optimum exactly.
inline std::pair<std::vector<int>, Real> bottleneck_match(const RootSequence& zetas,
                                                          const RootSequence& omegas) {
  if (zetas.size() != omegas.size())
    throw std::invalid_argument("bottleneck_match: length mismatch");
  const int n = static_cast<int>(zetas.size());
  if (n == 0) return {{}, Real(0)};

  std::vector<std::vector<Real>> dist(static_cast<std::size_t>(n),
                                      std::vector<Real>(static_cast<std::size_t>(n)));
  std::vector<Real> candidates;
  candidates.reserve(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      dist[i][j] = std::abs(omegas[static_cast<std::size_t>(j)] -
                            zetas[static_cast<std::size_t>(i)]);
      candidates.push_back(dist[i][j]);
    }
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()),
                   candidates.end());

  std::vector<int> match_of_omega(static_cast<std::size_t>(n), -1);
  std::vector<char> visited(static_cast<std::size_t>(n), 0);
  // Kuhn's augmenting search restricted to edges with dist <= limit.
  auto augment = [&](auto&& self, int i, Real limit) -> bool {
    for (int j = 0; j < n; ++j) {
      if (visited[static_cast<std::size_t>(j)] || !(dist[i][j] <= limit)) continue;
      visited[static_cast<std::size_t>(j)] = 1;
      if (match_of_omega[static_cast<std::size_t>(j)] < 0 ||
          self(self, match_of_omega[static_cast<std::size_t>(j)], limit)) {
        match_of_omega[static_cast<std::size_t>(j)] = i;
        return true;
      }
    }
    return false;
  };
  auto feasible = [&](Real limit) {
    std::fill(match_of_omega.begin(), match_of_omega.end(), -1);
    for (int i = 0; i < n; ++i) {
      std::fill(visited.begin(), visited.end(), 0);
      if (!augment(augment, i, limit)) return false;
    }
    return true;
  };

  std::size_t lo = 0, hi = candidates.size() - 1;
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    if (feasible(candidates[mid]))
      hi = mid;
    else
      lo = mid + 1;
  }
  feasible(candidates[lo]);  // rebuild the optimal matching

  std::vector<int> perm(static_cast<std::size_t>(n), -1);
  for (int j = 0; j < n; ++j)
    perm[static_cast<std::size_t>(match_of_omega[static_cast<std::size_t>(j)])] = j;
  Real worst = 0;
  for (int i = 0; i < n; ++i)
    worst = std::max(worst, dist[i][perm[static_cast<std::size_t>(i)]]);
  return {std::move(perm), worst};
}

/// Counts the roots of g strictly inside each ball B(center_j, eps + slack)
/// and matches the two full root sequences.  slack exists for harness use
/// (absorbing root-finder error); the definition itself has slack 0.
inline AlignmentReport is_epsilon_aligned(const RootClusters& f_clusters,
                                          const RootSequence& g_roots, Real eps,
                                          Real slack = 0) {
  if (!(eps > 0))
    throw std::invalid_argument("is_epsilon_aligned: eps must be positive");
  if (!(slack >= 0))
    throw std::invalid_argument("is_epsilon_aligned: slack must be >= 0");
  if (f_clusters.total_multiplicity() != static_cast<int>(g_roots.size()))
    throw std::invalid_argument("is_epsilon_aligned: root count mismatch");

  AlignmentReport rep;
  rep.counts.reserve(f_clusters.clusters.size());
  bool aligned = true;
  for (const RootCluster& cl : f_clusters.clusters) {
    int count = 0;
    for (const Scalar& w : g_roots)
      if (std::abs(w - cl.center) < eps + slack) ++count;
    rep.counts.push_back(count);
    aligned = aligned && count >= cl.multiplicity;
  }
  rep.aligned = aligned;
  rep.balls_disjoint = balls_disjoint(f_clusters, eps);

  RootSequence expanded;
  expanded.reserve(g_roots.size());
  for (const RootCluster& cl : f_clusters.clusters)
    expanded.insert(expanded.end(), static_cast<std::size_t>(cl.multiplicity),
                    cl.center);
  auto [perm, worst] = bottleneck_match(expanded, g_roots);
  rep.permutation = std::move(perm);
  rep.max_displacement = worst;
  return rep;
}

}  // namespace rootbound
