#pragma once

#include <cmath>

#include "capcert/geometry.hpp"
#include "capcert/random.hpp"

namespace capcert {

/// Uniform point of S^{n-1}: n independent standard normals, normalized.
/// A (probability-zero) near-zero draw is re-sampled.
inline UnitVector sample_uniform(std::size_t n, RandomStream& rng) {
  if (n < 2) throw error("sphere dimension must be >= 2");
  Vec g(n);
  for (;;) {
    for (std::size_t i = 0; i < n; ++i) g[i] = rng.next_gaussian();
    if (norm(g) > 1e-12) break;
  }
  return UnitVector(std::move(g));
}

/// Uniform point of the ring {y : ||x - y|| = 2 cos(alpha)}, built as
/// cos(pi - 2a) x + sin(pi - 2a) u with u uniform on the unit sphere of
/// the orthogonal complement of x. Requires 0 < alpha <= pi/6.
inline UnitVector sample_ring(const UnitVector& x, Angle alpha, RandomStream& rng) {
  const Angle rho = ring_geodesic_radius(alpha);
  const std::size_t n = x.dim();
  Vec u(n);
  for (;;) {
    for (std::size_t i = 0; i < n; ++i) u[i] = rng.next_gaussian();
    const double along = dot(u, x.coords());
    for (std::size_t i = 0; i < n; ++i) u[i] -= along * x[i];
    const double m = norm(u);
    if (m > 1e-9) {
      for (double& c : u) c /= m;
      break;
    }
  }
  const double c = std::cos(rho.value()), s = std::sin(rho.value());
  Vec y(n);
  for (std::size_t i = 0; i < n; ++i) y[i] = c * x[i] + s * u[i];
  return UnitVector(std::move(y));
}

}  // namespace capcert
