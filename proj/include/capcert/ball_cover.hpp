#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "capcert/certificate.hpp"
#include "capcert/enclosing.hpp"
#include "capcert/geometry.hpp"
#include "capcert/set_cover.hpp"

namespace capcert {

inline constexpr std::size_t kBallCoverExactLimit = 24;
inline constexpr double kBallBoundaryTol = 1e-9;
inline constexpr double kPackingMargin = 1e-6;

/// Size of a greedily grown subset of points pairwise more than d apart.
/// Any closed ball of diameter d contains at most one of them, so this is
/// a lower bound on every cover. The margin keeps the bound sound against
/// the boundary tolerance used for ball containment.
inline std::size_t packing_bound(const std::vector<Vec>& points, double d) {
  std::vector<std::size_t> kept;
  for (std::size_t i = 0; i < points.size(); ++i) {
    bool far = true;
    for (const std::size_t k : kept)
      if (distance(points[i], points[k]) <= d + kPackingMargin) {
        far = false;
        break;
      }
    if (far) kept.push_back(i);
  }
  return kept.size();
}

namespace detail {

struct CoverableOracle {
  const std::vector<Vec>& points;
  double radius_cap;

  std::optional<Ball> operator()(const std::vector<std::size_t>& subset) const {
    std::vector<Vec> sub;
    sub.reserve(subset.size());
    for (const std::size_t i : subset) sub.push_back(points[i]);
    Ball b = min_enclosing_ball(sub);
    if (b.radius <= radius_cap + kBallBoundaryTol) return b;
    return std::nullopt;
  }
};

struct MaximalSubsetEnumerator {
  const CoverableOracle& coverable;
  std::size_t point_count;
  std::size_t node_limit;
  std::size_t nodes = 0;
  std::vector<std::pair<Mask, Vec>> maximal;

  bool extends(std::vector<std::size_t>& subset, std::size_t i) const {
    subset.push_back(i);
    const bool ok = coverable(subset).has_value();
    subset.pop_back();
    return ok;
  }

  void dfs(std::vector<std::size_t>& subset, Mask mask, std::size_t start) {
    if (++nodes > node_limit)
      throw desk_scale_error("coverable-subset enumeration exceeded the node limit");
    bool grew = false;
    for (std::size_t i = start; i < point_count; ++i)
      if (extends(subset, i)) {
        grew = true;
        subset.push_back(i);
        dfs(subset, mask | (Mask{1} << i), i + 1);
        subset.pop_back();
      }
    if (grew) return;
    for (std::size_t i = 0; i < start; ++i)
      if (!(mask & (Mask{1} << i)) && extends(subset, i)) return;
    maximal.emplace_back(mask, coverable(subset)->center);
  }
};

}  // namespace detail

struct BallCoverOptions {
  bool exact = true;
  std::size_t exact_limit = kBallCoverExactLimit;
  std::size_t node_limit = 5'000'000;
};

struct BallCoverResult {
  CoverCertificate certificate;
  std::vector<Vec> centers;
  std::vector<Mask> covered;
  std::size_t packing = 0;
  std::size_t max_coverable = 0;
  std::size_t candidate_count = 0;
};

/// Minimum number of closed balls of diameter d covering the points.
/// A subset fits in one ball iff its enclosing-ball radius is at most d/2,
/// and a ball may as well be the enclosing ball of what it covers, so in
/// exact mode the candidate pool is every maximal coverable subset and the
/// cover is solved to optimality. Greedy mode grows one maximal subset per
/// seed point and runs greedy cover; its lower bound is packing only.
inline BallCoverResult ball_cover_number(const std::vector<Vec>& points, double d,
                                         const BallCoverOptions& options = {}) {
  if (points.empty()) throw error("ball cover of an empty set");
  if (!(d > 0.0)) throw error("ball diameter must be positive");
  const std::size_t m = points.size();
  if (m > 64) throw desk_scale_error("ball cover limited to 64 points");
  if (options.exact && m > options.exact_limit)
    throw desk_scale_error("too many points for exact ball cover; use greedy mode");

  const detail::CoverableOracle coverable{points, d / 2.0};
  BallCoverResult result;
  result.packing = packing_bound(points, d);

  std::vector<Mask> masks;
  std::vector<Vec> centers;
  if (options.exact) {
    detail::MaximalSubsetEnumerator enumerator{coverable, m, options.node_limit, 0, {}};
    std::vector<std::size_t> subset;
    enumerator.dfs(subset, 0, 0);
    std::sort(enumerator.maximal.begin(), enumerator.maximal.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    enumerator.maximal.erase(
        std::unique(enumerator.maximal.begin(), enumerator.maximal.end(),
                    [](const auto& a, const auto& b) { return a.first == b.first; }),
        enumerator.maximal.end());
    for (auto& [mask, center] : enumerator.maximal) {
      masks.push_back(mask);
      centers.push_back(std::move(center));
      result.max_coverable =
          std::max(result.max_coverable,
                   static_cast<std::size_t>(std::popcount(mask)));
    }
  } else {
    for (std::size_t seed = 0; seed < m; ++seed) {
      std::vector<std::size_t> subset{seed};
      Vec center = points[seed];
      for (;;) {
        std::size_t best = m;
        double best_radius = 0.0;
        Vec best_center;
        for (std::size_t j = 0; j < m; ++j) {
          if (std::find(subset.begin(), subset.end(), j) != subset.end()) continue;
          subset.push_back(j);
          const std::optional<Ball> ball = coverable(subset);
          subset.pop_back();
          if (ball && (best == m || ball->radius < best_radius)) {
            best = j;
            best_radius = ball->radius;
            best_center = ball->center;
          }
        }
        if (best == m) break;
        subset.push_back(best);
        std::sort(subset.begin(), subset.end());
        center = best_center;
      }
      Mask mask = 0;
      for (const std::size_t i : subset) mask |= Mask{1} << i;
      masks.push_back(mask);
      centers.push_back(std::move(center));
    }
  }
  result.candidate_count = masks.size();

  const SetCoverResult cover =
      options.exact ? exact_set_cover(m, masks) : greedy_set_cover(m, masks);
  for (const std::size_t s : cover.chosen) {
    result.centers.push_back(centers[s]);
    result.covered.push_back(masks[s]);
  }

  CoverCertificate& cert = result.certificate;
  cert.universe_size = m;
  cert.upper_bound = cover.size;
  cert.parameters["d"] = d;
  cert.parameters["points"] = static_cast<double>(m);
  if (options.exact) {
    cert.lower_bound = cover.size;
    cert.lb_method = "exact";
    cert.ub_method = "exact";
  } else {
    cert.lower_bound = std::min(result.packing, cover.size);
    cert.lb_method = "packing";
    cert.ub_method = "greedy";
  }
  cert.check();
  return result;
}

/// ceil(m / s_max): with at most s_max points per ball, any cover needs at
/// least this many balls. Valid only when s_max is the true maximum
/// coverable-subset size, which exact mode certifies.
inline std::size_t multiplicity_style_bound(std::size_t m, std::size_t s_max) {
  if (s_max == 0) throw error("multiplicity bound needs a positive subset size");
  return (m + s_max - 1) / s_max;
}

}  // namespace capcert
