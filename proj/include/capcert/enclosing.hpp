#pragma once

#include <algorithm>
#include <cmath>
#include <list>
#include <utility>
#include <vector>

#include "capcert/geometry.hpp"
#include "capcert/random.hpp"
#include "capcert/sampling.hpp"

namespace capcert {

/// The ambient enclosing-ball center coincides with the origin, so no
/// enclosing cap of radius < pi/2 exists; callers fall back to a sampled
/// search.
struct degenerate_center_error : error {
  using error::error;
};

struct Ball {
  Vec center;
  double radius = -1.0;
  std::vector<std::size_t> support;

  bool contains(const Vec& p, double slack = 0.0) const {
    if (radius < 0.0) return false;
    return distance(center, p) <= radius + slack;
  }
};

namespace detail {

// Ball with every point of `support` on its boundary and center in their
// affine hull: solve 2 (q_i - q_0) . (c - q_0) = ||q_i - q_0||^2.
inline Ball ball_on_boundary(const std::vector<Vec>& pts,
                             const std::vector<std::size_t>& support) {
  Ball b;
  b.support = support;
  if (support.empty()) return b;
  const Vec& q0 = pts[support[0]];
  const std::size_t m = support.size() - 1;
  if (m == 0) {
    b.center = q0;
    b.radius = 0.0;
    return b;
  }
  std::vector<Vec> v(m);
  for (std::size_t i = 0; i < m; ++i) v[i] = difference(pts[support[i + 1]], q0);
  std::vector<std::vector<double>> a(m, std::vector<double>(m + 1));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) a[i][j] = 2.0 * dot(v[i], v[j]);
    a[i][m] = dot(v[i], v[i]);
  }
  // Gaussian elimination with partial pivoting.
  for (std::size_t col = 0; col < m; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < m; ++r)
      if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
    std::swap(a[col], a[piv]);
    if (std::abs(a[col][col]) < 1e-150) continue;
    for (std::size_t r = col + 1; r < m; ++r) {
      const double f = a[r][col] / a[col][col];
      if (f == 0.0) continue;
      for (std::size_t j = col; j <= m; ++j) a[r][j] -= f * a[col][j];
    }
  }
  std::vector<double> lambda(m, 0.0);
  for (std::size_t i = m; i-- > 0;) {
    double s = a[i][m];
    for (std::size_t j = i + 1; j < m; ++j) s -= a[i][j] * lambda[j];
    lambda[i] = std::abs(a[i][i]) < 1e-150 ? 0.0 : s / a[i][i];
  }
  b.center = q0;
  for (std::size_t j = 0; j < m; ++j)
    for (std::size_t k = 0; k < b.center.size(); ++k) b.center[k] += lambda[j] * v[j][k];
  b.radius = distance(b.center, q0);
  return b;
}

inline Ball welzl_mtf(const std::vector<Vec>& pts, std::list<std::size_t>& order,
                      std::list<std::size_t>::iterator end,
                      std::vector<std::size_t> support, std::size_t dim) {
  Ball ball = ball_on_boundary(pts, support);
  if (support.size() == dim + 1) return ball;
  for (auto it = order.begin(); it != end;) {
    const std::size_t p = *it;
    const double slack = 1e-12 * (1.0 + std::abs(ball.radius));
    if (!ball.contains(pts[p], slack)) {
      auto next = support;
      next.push_back(p);
      ball = welzl_mtf(pts, order, it, std::move(next), dim);
      auto moved = it++;
      order.splice(order.begin(), order, moved);
    } else {
      ++it;
    }
  }
  return ball;
}

}  // namespace detail

/// Exact minimum enclosing Euclidean ball, move-to-front Welzl recursion.
/// The support (<= dim+1 indices) lies on the boundary and determines the
/// ball.
inline Ball min_enclosing_ball(const std::vector<Vec>& points) {
  if (points.empty()) throw error("enclosing ball of an empty set");
  const std::size_t dim = points[0].size();
  for (const Vec& p : points)
    if (p.size() != dim) throw dimension_mismatch("enclosing ball: mixed dimensions");
  std::list<std::size_t> order;
  for (std::size_t i = 0; i < points.size(); ++i) order.push_back(i);
  Ball b = detail::welzl_mtf(points, order, order.end(), {}, dim);
  if (b.radius < 0.0) {
    b.center = points[0];
    b.radius = 0.0;
    b.support = {0};
  }
  return b;
}

/// Smallest spherical cap covering a set of unit vectors, via the ambient
/// enclosing ball: its center direction is exactly the minimax direction
/// whenever the optimum is below pi/2 (center away from the origin).
struct EnclosingCap {
  UnitVector center;
  Angle radius;
  std::vector<std::size_t> support;
};

inline EnclosingCap min_enclosing_cap(const std::vector<UnitVector>& points) {
  if (points.empty()) throw error("enclosing cap of an empty set");
  std::vector<Vec> pts;
  pts.reserve(points.size());
  for (const UnitVector& p : points) pts.push_back(p.coords());
  Ball b = min_enclosing_ball(pts);
  if (norm(b.center) <= 1e-12)
    throw degenerate_center_error(
        "degenerate center: no unique enclosing cap of radius < pi/2");
  UnitVector center{b.center};
  double worst = 0.0;
  for (const UnitVector& p : points)
    worst = std::max(worst, angle_between(center, p).value());
  return EnclosingCap{std::move(center), Angle(worst), b.support};
}

/// min_enclosing_cap with a sampled-search fallback for the degenerate
/// (center at origin) case. The fallback minimizes the max angle over
/// sampled directions, then walks toward the current farthest point with
/// a shrinking step. Support is the set of near-farthest points.
inline EnclosingCap min_enclosing_cap_or_search(const std::vector<UnitVector>& points,
                                                RandomStream rng,
                                                std::size_t samples = 4096) {
  try {
    return min_enclosing_cap(points);
  } catch (const degenerate_center_error&) {
  }
  const std::size_t n = points[0].dim();
  const auto max_angle = [&points](const UnitVector& u) {
    double worst = 0.0;
    for (const UnitVector& p : points)
      worst = std::max(worst, angle_between(u, p).value());
    return worst;
  };
  UnitVector best = points[0];
  double best_val = max_angle(best);
  for (std::size_t s = 0; s < samples; ++s) {
    UnitVector u = sample_uniform(n, rng);
    const double v = max_angle(u);
    if (v < best_val) {
      best_val = v;
      best = u;
    }
  }
  double step = 0.1;
  while (step > 1e-5) {
    bool improved = false;
    for (int iter = 0; iter < 40; ++iter) {
      std::size_t far = 0;
      double worst = -1.0;
      for (std::size_t i = 0; i < points.size(); ++i) {
        const double a = angle_between(best, points[i]).value();
        if (a > worst) {
          worst = a;
          far = i;
        }
      }
      Vec tang = points[far].coords();
      const double along = dot(tang, best.coords());
      for (std::size_t k = 0; k < n; ++k) tang[k] -= along * best[k];
      const double m = norm(tang);
      if (m < 1e-12) break;
      Vec moved(n);
      for (std::size_t k = 0; k < n; ++k)
        moved[k] = std::cos(step) * best[k] + std::sin(step) * tang[k] / m;
      UnitVector cand{std::move(moved)};
      const double v = max_angle(cand);
      if (v < best_val) {
        best_val = v;
        best = cand;
        improved = true;
      }
    }
    if (!improved) step *= 0.5;
  }
  std::vector<std::size_t> near_far;
  for (std::size_t i = 0; i < points.size(); ++i)
    if (angle_between(best, points[i]).value() >= best_val - 1e-6) near_far.push_back(i);
  return EnclosingCap{best, Angle(std::min(best_val, kPi)), std::move(near_far)};
}

}  // namespace capcert
