#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <utility>
#include <vector>

#include "capcert/geometry.hpp"
#include "capcert/random.hpp"
#include "capcert/sampling.hpp"

namespace capcert {

namespace detail {
inline void require_apex_half_angle(Angle alpha) {
  if (!(alpha.value() > 0.0 && alpha.value() <= kPi / 6.0 + 1e-12))
    throw error("apex half-angle must lie in (0, pi/6]");
}
}  // namespace detail

/// True iff every pair stays within geodesic angle pi - 2*alpha, which
/// bounds the Euclidean diameter of the set by 2 cos(alpha).
inline bool check_diameter_hypothesis(const std::vector<UnitVector>& points,
                                      Angle alpha) {
  detail::require_apex_half_angle(alpha);
  const double hi = kPi - 2.0 * alpha.value() + kAngleTol;
  for (std::size_t i = 0; i < points.size(); ++i)
    for (std::size_t j = i + 1; j < points.size(); ++j)
      if (angle_between(points[i], points[j]).value() > hi) return false;
  return true;
}

/// True iff every pair satisfies 4*alpha <= theta <= pi - 6*alpha, the
/// separation needed for the cone union over the set to keep diameter
/// 2 cos(alpha). Nonvacuous for two or more points only when
/// alpha <= pi/10.
inline bool check_witness_hypothesis(const std::vector<UnitVector>& points,
                                     Angle alpha) {
  detail::require_apex_half_angle(alpha);
  const double lo = 4.0 * alpha.value() - kAngleTol;
  const double hi = kPi - 6.0 * alpha.value() + kAngleTol;
  for (std::size_t i = 0; i < points.size(); ++i)
    for (std::size_t j = i + 1; j < points.size(); ++j) {
      const double theta = angle_between(points[i], points[j]).value();
      if (theta < lo || theta > hi) return false;
    }
  return true;
}

/// Finite stand-in for the union of cone bases-plus-apexes over a point
/// set: each apex x carries samples of its ring at chord 2 cos(alpha).
struct WitnessSet {
  Angle alpha;
  std::vector<UnitVector> apexes;
  std::vector<std::vector<UnitVector>> ring_samples;
  std::size_t samples_per_ring = 0;
  std::uint64_t seed = 0;
};

inline std::size_t default_ring_samples(std::size_t dim) {
  return std::max<std::size_t>(64, 2 * dim);
}

/// Samples each apex's ring. The pairwise-angle hypothesis is enforced up
/// front because it is what makes the sampled set's diameter provably
/// 2 cos(alpha); pass enforce_hypothesis = false only to study violations.
inline WitnessSet build_witness(std::vector<UnitVector> points, Angle alpha,
                                std::size_t samples_per_ring, std::uint64_t seed,
                                bool enforce_hypothesis = true) {
  detail::require_apex_half_angle(alpha);
  if (points.empty()) throw error("witness set needs at least one apex");
  if (enforce_hypothesis && !check_witness_hypothesis(points, alpha))
    throw error("apex set violates the pairwise angle window [4a, pi-6a]");
  WitnessSet w;
  w.alpha = alpha;
  w.samples_per_ring = samples_per_ring;
  w.seed = seed;
  w.ring_samples.resize(points.size());
  RandomStream root(seed);
  for (std::size_t i = 0; i < points.size(); ++i) {
    RandomStream sub = root.split(i);
    w.ring_samples[i].reserve(samples_per_ring);
    for (std::size_t s = 0; s < samples_per_ring; ++s)
      w.ring_samples[i].push_back(sample_ring(points[i], alpha, sub));
  }
  w.apexes = std::move(points);
  return w;
}

inline std::vector<UnitVector> witness_points(const WitnessSet& w) {
  std::vector<UnitVector> all = w.apexes;
  for (const auto& ring : w.ring_samples) all.insert(all.end(), ring.begin(), ring.end());
  return all;
}

/// Diameter over apexes and ring samples. Under the build-time hypothesis
/// this is 2 cos(alpha) exactly up to sampling roundoff: apex-to-own-ring
/// pairs realize the value, and no pair exceeds it.
inline double witness_diameter(const WitnessSet& w) {
  return diameter(witness_points(w));
}

/// Cap of directions that can illuminate the boundary point x on any
/// convex body of diameter 2 cos(alpha) containing x's cone neighborhood:
/// C(-x, pi/2 - alpha).
struct ConeConstraint {
  UnitVector apex;
  SphericalCap cone;
};

inline ConeConstraint illumination_cone(const UnitVector& x, Angle alpha) {
  detail::require_apex_half_angle(alpha);
  UnitVector opposite = x.negated();
  return ConeConstraint{x, SphericalCap(std::move(opposite),
                                        Angle(kPi / 2.0 - alpha.value()))};
}

/// Indices of apexes whose illumination cone contains xi; a superset of
/// what xi can illuminate on any admissible containing body.
inline std::vector<std::size_t> illuminable_set(const UnitVector& xi,
                                                const WitnessSet& w) {
  std::vector<std::size_t> hit;
  for (std::size_t i = 0; i < w.apexes.size(); ++i)
    if (cap_contains(illumination_cone(w.apexes[i], w.alpha).cone, xi))
      hit.push_back(i);
  return hit;
}

inline std::vector<double> default_t_grid() {
  std::vector<double> grid(64);
  const double lo = std::log(1e-6);
  const double hi = std::log(4.0);
  for (std::size_t k = 0; k < grid.size(); ++k)
    grid[k] = std::exp(lo + (hi - lo) * static_cast<double>(k) / 63.0);
  return grid;
}

struct ConeNecessityResult {
  bool ok = false;
  Vec blocking_point;
  double chord = 0.0;
  std::vector<double> distances;
};

/// Certifies that a direction outside the illumination cone cannot
/// illuminate x: in the plane through x, xi, and the origin, one of the two
/// ring points y with ||y - x|| = 2 cos(alpha) has theta(y - x, xi) > pi/2,
/// so every point x + t*xi (t > 0) is farther than 2 cos(alpha) from y and
/// the ray never re-enters the witness hull.
inline ConeNecessityResult verify_cone_necessity(const UnitVector& x,
                                                 const UnitVector& xi, Angle alpha,
                                                 const std::vector<double>& t_grid) {
  detail::require_apex_half_angle(alpha);
  require_same_dim(x, xi);
  const double along = dot(xi.coords(), x.coords());
  if (std::abs(along) > 1.0 - 1e-12) throw error("plane undefined");
  const double cone_angle = angle_between(xi, x.negated()).value();
  if (cone_angle <= kPi / 2.0 - alpha.value() + 1e-6)
    throw error("direction lies inside the illumination cone");

  Vec in_plane = xi.coords();
  for (std::size_t k = 0; k < in_plane.size(); ++k) in_plane[k] -= along * x[k];
  const double m = norm(in_plane);
  for (double& c : in_plane) c /= m;

  const double rho = kPi - 2.0 * alpha.value();
  ConeNecessityResult result;
  double worst_cos = 1.0;
  for (const double sign : {1.0, -1.0}) {
    Vec y(x.dim());
    for (std::size_t k = 0; k < y.size(); ++k)
      y[k] = std::cos(rho) * x[k] + sign * std::sin(rho) * in_plane[k];
    Vec from_apex = difference(y, x.coords());
    const double c = dot(from_apex, xi.coords()) / norm(from_apex);
    if (c < worst_cos) {
      worst_cos = c;
      result.blocking_point = std::move(y);
    }
  }
  if (!(worst_cos < 0.0)) throw error("no blocking ring point found");

  result.chord = distance(result.blocking_point, x.coords());
  result.ok = true;
  result.distances.reserve(t_grid.size());
  for (const double t : t_grid) {
    if (!(t > 0.0)) throw error("t grid must be positive");
    Vec p = x.coords();
    for (std::size_t k = 0; k < p.size(); ++k) p[k] += t * xi[k];
    const double d = distance(p, result.blocking_point);
    result.distances.push_back(d);
    if (!(d > result.chord)) result.ok = false;
  }
  return result;
}

}  // namespace capcert
