#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "capcert/enclosing.hpp"
#include "capcert/geometry.hpp"
#include "capcert/parallel.hpp"
#include "capcert/random.hpp"
#include "capcert/sampling.hpp"

namespace capcert {

inline constexpr std::size_t kDefaultExactLimit = 64;

struct MultiplicityReport {
  std::size_t family_size = 0;
  Angle cap_radius;
  unsigned mc_max = 0;
  std::optional<UnitVector> mc_argmax;
  std::size_t mc_samples = 0;
  std::optional<unsigned> exact_max;
  std::optional<UnitVector> exact_witness;
};

namespace detail {

inline unsigned containment_depth(const std::vector<UnitVector>& centers, Angle phi,
                                  const UnitVector& point) {
  unsigned depth = 0;
  for (const UnitVector& c : centers)
    if (angle_between(c, point).value() <= phi.value() + 1e-12) ++depth;
  return depth;
}

inline void require_family(const std::vector<UnitVector>& centers) {
  if (centers.empty()) throw error("empty cap family");
  for (const UnitVector& c : centers)
    if (c.dim() != centers[0].dim())
      throw dimension_mismatch("cap family mixes dimensions");
}

}  // namespace detail

/// Monte Carlo lower bound on the maximum number of caps sharing a point.
/// Samples uniform directions in fixed chunks with per-chunk substreams
/// (so the result is worker-count independent), then one refinement round:
/// recenter the best sample at the enclosing-cap center of its hit set and
/// recount.
inline MultiplicityReport multiplicity_mc(const std::vector<UnitVector>& centers,
                                          Angle phi, std::size_t samples,
                                          RandomStream rng) {
  detail::require_family(centers);
  MultiplicityReport report;
  report.family_size = centers.size();
  report.cap_radius = phi;
  report.mc_samples = samples;
  const std::size_t dim = centers[0].dim();

  struct Best {
    unsigned depth = 0;
    std::size_t index = 0;
    std::optional<UnitVector> point;
  };
  const std::size_t chunks = std::min<std::size_t>(samples == 0 ? 1 : samples, 128);
  Best best = parallel_map_reduce<Best>(
      chunks, Best{},
      [&](std::size_t c) {
        const std::size_t lo = samples * c / chunks;
        const std::size_t hi = samples * (c + 1) / chunks;
        RandomStream sub = rng.split(c);
        Best local;
        for (std::size_t s = lo; s < hi; ++s) {
          UnitVector xi = sample_uniform(dim, sub);
          const unsigned depth = detail::containment_depth(centers, phi, xi);
          if (depth > local.depth) local = Best{depth, s, std::move(xi)};
        }
        return local;
      },
      [](Best acc, Best part) {
        if (part.depth > acc.depth ||
            (part.depth == acc.depth && part.point && acc.point &&
             part.index < acc.index))
          return part;
        return acc;
      });

  if (!best.point) {
    report.mc_max = 0;
    return report;
  }
  report.mc_max = best.depth;
  report.mc_argmax = best.point;

  std::vector<UnitVector> hit;
  for (const UnitVector& c : centers)
    if (angle_between(c, *best.point).value() <= phi.value() + 1e-12) hit.push_back(c);
  if (!hit.empty()) {
    try {
      const EnclosingCap cap = min_enclosing_cap(hit);
      const unsigned depth = detail::containment_depth(centers, phi, cap.center);
      if (depth > report.mc_max) {
        report.mc_max = depth;
        report.mc_argmax = cap.center;
      }
    } catch (const degenerate_center_error&) {
    }
  }
  return report;
}

inline MultiplicityReport multiplicity_mc(const std::vector<SphericalCap>& caps,
                                          std::size_t samples, RandomStream rng) {
  if (caps.empty()) throw error("empty cap family");
  std::vector<UnitVector> centers;
  centers.reserve(caps.size());
  for (const SphericalCap& cap : caps) {
    if (std::abs(cap.radius.value() - caps[0].radius.value()) > 1e-12)
      throw error("cap family must share one radius");
    centers.push_back(cap.center);
  }
  return multiplicity_mc(centers, caps[0].radius, samples, rng);
}

struct ExactMultiplicity {
  unsigned max = 0;
  UnitVector witness;
};

namespace detail {

struct ExactSearch {
  const std::vector<UnitVector>& centers;
  double phi;
  std::vector<std::uint64_t> adj;
  std::vector<std::size_t> chosen;
  unsigned best = 0;
  std::vector<std::size_t> best_set;

  bool feasible() {
    if (chosen.size() <= 1) return true;
    std::vector<UnitVector> sub;
    sub.reserve(chosen.size());
    for (std::size_t i : chosen) sub.push_back(centers[i]);
    try {
      return min_enclosing_cap(sub).radius.value() <= phi + 1e-12;
    } catch (const degenerate_center_error&) {
      return false;
    }
  }

  void dfs(std::uint64_t cand) {
    if (chosen.size() > best) {
      best = static_cast<unsigned>(chosen.size());
      best_set = chosen;
    }
    while (cand != 0) {
      if (chosen.size() + static_cast<std::size_t>(std::popcount(cand)) <= best)
        return;
      const int i = std::countr_zero(cand);
      cand &= cand - 1;
      chosen.push_back(static_cast<std::size_t>(i));
      if (feasible()) dfs(cand & adj[static_cast<std::size_t>(i)]);
      chosen.pop_back();
    }
  }
};

}  // namespace detail

/// Exact maximum multiplicity of the family {C(c_i, phi)}: the largest
/// subset whose centers fit in a cap of radius phi, equivalently whose caps
/// share a point. Depth-first branch and bound; subsets only lose
/// feasibility as they grow, so infeasible nodes close their subtrees.
/// Requires phi < pi/2 so enclosing-cap feasibility is decidable.
inline ExactMultiplicity multiplicity_exact(const std::vector<UnitVector>& centers,
                                            Angle phi,
                                            std::size_t limit = kDefaultExactLimit) {
  detail::require_family(centers);
  if (centers.size() > std::min<std::size_t>(limit, 64))
    throw desk_scale_error("family too large for exact multiplicity; raise the limit or use mc");
  if (phi.value() >= kPi / 2.0)
    throw error("exact multiplicity requires cap radius < pi/2");

  const std::size_t m = centers.size();
  detail::ExactSearch search{centers, phi.value(), {}, {}, 0, {}};
  search.adj.assign(m, 0);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j)
      if (angle_between(centers[i], centers[j]).value() <= 2.0 * phi.value() + 1e-12) {
        search.adj[i] |= std::uint64_t{1} << j;
        search.adj[j] |= std::uint64_t{1} << i;
      }

  for (std::size_t i = 0; i < m; ++i) {
    const unsigned depth = detail::containment_depth(centers, phi, centers[i]);
    if (depth > search.best) {
      search.best = depth;
      search.best_set.clear();
      for (std::size_t j = 0; j < m; ++j)
        if (angle_between(centers[j], centers[i]).value() <= phi.value() + 1e-12)
          search.best_set.push_back(j);
    }
  }

  const std::uint64_t all =
      m == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << m) - 1;
  search.dfs(all);

  std::vector<UnitVector> sub;
  sub.reserve(search.best_set.size());
  for (std::size_t i : search.best_set) sub.push_back(centers[i]);
  UnitVector witness =
      sub.size() == 1 ? sub[0] : min_enclosing_cap(sub).center;
  return ExactMultiplicity{search.best, std::move(witness)};
}

}  // namespace capcert
