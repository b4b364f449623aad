#pragma once

#include <cmath>
#include <cstddef>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace capcert {

inline constexpr double kPi = std::numbers::pi;

// Absolute tolerance for angular comparisons.
inline constexpr double kAngleTol = 1e-9;

struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct dimension_mismatch : error {
  using error::error;
};

// Thrown when a computation exceeds the configured desk-scale limits
// (candidate count cap, exact-solver size limit).
struct desk_scale_error : error {
  using error::error;
};

using Vec = std::vector<double>;

namespace detail {
inline void require_same_size(const Vec& a, const Vec& b) {
  if (a.size() != b.size())
    throw dimension_mismatch("vector length mismatch: " + std::to_string(a.size()) +
                             " vs " + std::to_string(b.size()));
}
}  // namespace detail

inline double dot(const Vec& a, const Vec& b) {
  detail::require_same_size(a, b);
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline double norm(const Vec& a) { return std::sqrt(dot(a, a)); }

inline double distance(const Vec& a, const Vec& b) {
  detail::require_same_size(a, b);
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return std::sqrt(s);
}

inline Vec scaled(const Vec& a, double t) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] * t;
  return r;
}

inline Vec sum(const Vec& a, const Vec& b) {
  detail::require_same_size(a, b);
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

inline Vec difference(const Vec& a, const Vec& b) {
  detail::require_same_size(a, b);
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

inline double clamp_unit(double x) { return x < -1.0 ? -1.0 : (x > 1.0 ? 1.0 : x); }

/// An angle in radians, kept in [0, pi]. Values outside by more than 1e-12
/// are rejected; values within the band are clamped.
class Angle {
 public:
  Angle() : value_(0.0) {}
  explicit Angle(double radians) : value_(radians) {
    if (!(radians >= -1e-12 && radians <= kPi + 1e-12))
      throw error("angle out of range [0, pi]: " + std::to_string(radians));
    if (value_ < 0.0) value_ = 0.0;
    if (value_ > kPi) value_ = kPi;
  }
  double value() const { return value_; }

  friend bool operator<(Angle a, Angle b) { return a.value_ < b.value_; }
  friend bool operator<=(Angle a, Angle b) { return a.value_ <= b.value_; }

 private:
  double value_;
};

/// A point of the unit sphere S^{n-1}, n >= 2. The constructor normalizes;
/// a zero vector or a 1-dimensional input is rejected.
class UnitVector {
 public:
  explicit UnitVector(Vec coords) : coords_(std::move(coords)) {
    if (coords_.size() < 2) throw error("unit vector needs dimension >= 2");
    const double n = norm(coords_);
    if (!(n > 1e-30)) throw error("cannot normalize a zero vector");
    if (std::abs(n - 1.0) > 1e-15)
      for (double& c : coords_) c /= n;
  }

  std::size_t dim() const { return coords_.size(); }
  const Vec& coords() const { return coords_; }
  double operator[](std::size_t i) const { return coords_[i]; }

  UnitVector negated() const {
    Vec c = coords_;
    for (double& x : c) x = -x;
    return UnitVector(std::move(c));
  }

  static UnitVector axis(std::size_t dim, std::size_t k) {
    Vec c(dim, 0.0);
    c.at(k) = 1.0;
    return UnitVector(std::move(c));
  }

 private:
  Vec coords_;
};

inline void require_same_dim(const UnitVector& x, const UnitVector& y) {
  if (x.dim() != y.dim())
    throw dimension_mismatch("dimension mismatch: " + std::to_string(x.dim()) +
                             " vs " + std::to_string(y.dim()));
}

/// Geodesic angle between two unit vectors, arccos of the clamped inner
/// product. Symmetric, zero iff the points coincide.
inline Angle angle_between(const UnitVector& x, const UnitVector& y) {
  require_same_dim(x, y);
  return Angle(std::acos(clamp_unit(dot(x.coords(), y.coords()))));
}

/// Chord length subtended by a geodesic angle: 2 sin(theta/2), in [0, 2].
inline double chord_from_angle(Angle theta) { return 2.0 * std::sin(theta.value() / 2.0); }

/// The cap {y : theta(center, y) <= radius}. Radius is restricted to (0, pi).
struct SphericalCap {
  UnitVector center;
  Angle radius;

  SphericalCap(UnitVector c, Angle r) : center(std::move(c)), radius(r) {
    if (!(r.value() > 0.0 && r.value() < kPi))
      throw error("cap radius must lie in (0, pi)");
  }
};

inline bool cap_contains(const SphericalCap& cap, const UnitVector& y) {
  return angle_between(cap.center, y).value() <= cap.radius.value() + 1e-12;
}

/// Geodesic distance from an apex x to every point of its ring
/// {y : ||x - y|| = 2 cos(alpha)}, namely pi - 2*alpha. Requires
/// 0 < alpha <= pi/6.
inline Angle ring_geodesic_radius(Angle alpha) {
  if (!(alpha.value() > 0.0 && alpha.value() <= kPi / 6.0 + 1e-12))
    throw error("ring apex half-angle must lie in (0, pi/6]");
  return Angle(kPi - 2.0 * alpha.value());
}

/// Exact max pairwise Euclidean distance, O(m^2).
inline double diameter(const std::vector<Vec>& points) {
  if (points.empty()) throw error("diameter of an empty set");
  double best = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i)
    for (std::size_t j = i + 1; j < points.size(); ++j) {
      const double d = distance(points[i], points[j]);
      if (d > best) best = d;
    }
  return best;
}

inline double diameter(const std::vector<UnitVector>& points) {
  if (points.empty()) throw error("diameter of an empty set");
  double best = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i)
    for (std::size_t j = i + 1; j < points.size(); ++j) {
      const double d = distance(points[i].coords(), points[j].coords());
      if (d > best) best = d;
    }
  return best;
}

}  // namespace capcert
