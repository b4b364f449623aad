#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "capcert/cap_measure.hpp"
#include "capcert/geometry.hpp"
#include "capcert/parallel.hpp"
#include "capcert/random.hpp"
#include "capcert/sampling.hpp"

namespace capcert {

inline constexpr std::size_t kDefaultCandidateCap = 10'000'000;

struct ConstructionParams {
  std::size_t dim = 0;
  Angle psi{0.0};
  Angle phi{0.0};
  std::uint64_t seed = 0;
  std::optional<std::size_t> n_override;

  void validate() const {
    if (dim < 2) throw error("construction requires dim >= 2");
    if (!(psi.value() > 0.0 && psi.value() < phi.value() && phi.value() < kPi / 2))
      throw error("construction requires 0 < psi < phi < pi/2");
    if (n_override && *n_override == 0) throw error("n_override must be positive");
  }
};

/// Candidate count ceil(8 n ln n / Omega_n((1 - 1/2n) phi)), the size at
/// which deleting one endpoint of every violating pair still keeps half
/// the points with probability >= 1/2.
inline std::size_t target_count(std::size_t n, Angle phi,
                                std::size_t cap = kDefaultCandidateCap) {
  if (n < 2) throw error("target_count requires n >= 2");
  if (!(phi.value() > 0.0 && phi.value() < kPi / 2))
    throw error("target_count requires 0 < phi < pi/2");
  const double nd = static_cast<double>(n);
  const double shrunk = (1.0 - 1.0 / (2.0 * nd)) * phi.value();
  const double omega = cap_measure(static_cast<int>(n), Angle(shrunk));
  const double raw = std::ceil(8.0 * nd * std::log(nd) / omega);
  if (!(raw > 0.0) || raw > static_cast<double>(cap))
    throw desk_scale_error("N too large for desk scale; pass n_override");
  return static_cast<std::size_t>(raw);
}

inline std::vector<UnitVector> sample_candidates(const ConstructionParams& params) {
  params.validate();
  const std::size_t count =
      params.n_override ? *params.n_override : target_count(params.dim, params.phi);
  RandomStream root(params.seed);
  std::vector<UnitVector> points;
  points.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    RandomStream sub = root.split(i);
    points.push_back(sample_uniform(params.dim, sub));
  }
  return points;
}

enum class PairKind { too_close, too_antipodal };

struct BadPair {
  std::size_t i = 0;
  std::size_t j = 0;
  PairKind kind = PairKind::too_close;
  double angle = 0.0;
};

using BadPairSet = std::vector<BadPair>;

/// Exhaustive O(N^2) scan for pairs with angle outside [psi, pi - psi].
/// Boundary pairs count as good: a pair is bad only when it clears the
/// boundary by more than 1e-12.
inline BadPairSet find_bad_pairs(const std::vector<UnitVector>& points, Angle psi) {
  if (psi.value() >= kPi / 2) throw error("find_bad_pairs requires psi < pi/2");
  const double lo = psi.value() - 1e-12;
  const double hi = kPi - psi.value() + 1e-12;
  const std::size_t m = points.size();
  return parallel_map_reduce<BadPairSet>(
      m, BadPairSet{},
      [&](std::size_t i) {
        BadPairSet local;
        for (std::size_t j = i + 1; j < m; ++j) {
          const double theta = angle_between(points[i], points[j]).value();
          if (theta < lo)
            local.push_back({i, j, PairKind::too_close, theta});
          else if (theta > hi)
            local.push_back({i, j, PairKind::too_antipodal, theta});
        }
        return local;
      },
      [](BadPairSet acc, BadPairSet part) {
        acc.insert(acc.end(), part.begin(), part.end());
        return acc;
      });
}

struct DeletionResult {
  std::vector<std::size_t> kept;
  std::vector<std::size_t> deleted;
};

/// Hits every bad pair by repeatedly deleting the point of maximum
/// remaining bad-degree, lowest index on ties. Never deletes more points
/// than there are pairs.
inline DeletionResult delete_bad(std::size_t point_count, const BadPairSet& bad) {
  std::vector<std::vector<std::size_t>> adjacent(point_count);
  std::vector<std::size_t> degree(point_count, 0);
  for (const BadPair& p : bad) {
    adjacent[p.i].push_back(p.j);
    adjacent[p.j].push_back(p.i);
    ++degree[p.i];
    ++degree[p.j];
  }
  std::vector<bool> gone(point_count, false);
  DeletionResult result;
  for (;;) {
    std::size_t best = point_count;
    std::size_t best_degree = 0;
    for (std::size_t v = 0; v < point_count; ++v)
      if (!gone[v] && degree[v] > best_degree) {
        best = v;
        best_degree = degree[v];
      }
    if (best == point_count) break;
    gone[best] = true;
    degree[best] = 0;
    result.deleted.push_back(best);
    for (std::size_t u : adjacent[best])
      if (!gone[u] && degree[u] > 0) --degree[u];
  }
  for (std::size_t v = 0; v < point_count; ++v)
    if (!gone[v]) result.kept.push_back(v);
  return result;
}

struct Configuration {
  ConstructionParams params;
  std::vector<UnitVector> points;
  std::size_t candidate_count = 0;
  std::size_t deleted_count = 0;
  std::size_t bad_pair_count = 0;
};

/// Sample, find violating pairs, delete. The output satisfies the pairwise
/// angle window unconditionally; candidate_count and deleted_count let the
/// caller judge how lossy the deletion was.
inline Configuration construct_separated(const ConstructionParams& params) {
  Configuration config;
  config.params = params;
  std::vector<UnitVector> candidates = sample_candidates(params);
  config.candidate_count = candidates.size();
  const BadPairSet bad = find_bad_pairs(candidates, params.psi);
  config.bad_pair_count = bad.size();
  const DeletionResult deletion = delete_bad(candidates.size(), bad);
  config.deleted_count = deletion.deleted.size();
  config.points.reserve(deletion.kept.size());
  for (std::size_t v : deletion.kept) config.points.push_back(std::move(candidates[v]));
  return config;
}

struct SeparationReport {
  bool ok = true;
  BadPairSet violations;
  double min_angle = kPi;
  double max_angle = 0.0;
  std::size_t pairs_checked = 0;
};

/// Exhaustive recheck of the pairwise window with the looser reporting
/// tolerance 1e-9 (find_bad_pairs deletes at 1e-12, so construction output
/// always passes).
inline SeparationReport verify_separation(const std::vector<UnitVector>& points,
                                          Angle psi) {
  SeparationReport report;
  const double lo = psi.value() - kAngleTol;
  const double hi = kPi - psi.value() + kAngleTol;
  for (std::size_t i = 0; i < points.size(); ++i)
    for (std::size_t j = i + 1; j < points.size(); ++j) {
      const double theta = angle_between(points[i], points[j]).value();
      report.min_angle = std::min(report.min_angle, theta);
      report.max_angle = std::max(report.max_angle, theta);
      ++report.pairs_checked;
      if (theta < lo)
        report.violations.push_back({i, j, PairKind::too_close, theta});
      else if (theta > hi)
        report.violations.push_back({i, j, PairKind::too_antipodal, theta});
    }
  report.ok = report.violations.empty();
  return report;
}

}  // namespace capcert
