#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "capcert/ball_cover.hpp"
#include "capcert/certificate.hpp"
#include "capcert/construct.hpp"
#include "capcert/enclosing.hpp"
#include "capcert/geometry.hpp"
#include "capcert/multiplicity.hpp"
#include "capcert/set_cover.hpp"
#include "capcert/witness.hpp"

namespace capcert {

inline constexpr std::uint64_t kWitnessSalt = 0x72696e67;
inline constexpr std::uint64_t kCoverSalt = 0x636f7665;
inline constexpr std::uint64_t kMcSalt = 0x6d63736d;

struct DirectionCover {
  std::size_t count = 0;
  std::vector<std::size_t> chosen;
  std::vector<UnitVector> directions;
  std::vector<UnitVector> pool;
  std::vector<Mask> pool_masks;
};

namespace detail {

inline Mask illuminable_mask(const std::vector<UnitVector>& apexes, Angle alpha,
                             const UnitVector& xi) {
  const double limit = kPi / 2.0 - alpha.value() + 1e-12;
  Mask mask = 0;
  for (std::size_t i = 0; i < apexes.size(); ++i)
    if (angle_between(xi, apexes[i].negated()).value() <= limit)
      mask |= Mask{1} << i;
  return mask;
}

}  // namespace detail

/// Upper bound on how many directions are needed so that every apex has a
/// direction inside its illumination cone. The candidate pool is the
/// antipodes {-x_i} (which guarantee a cover exists), random directions,
/// and recentered hit sets: for each candidate, the enclosing-cap center of
/// the antipodes it already covers. Standard greedy cover on top.
inline DirectionCover greedy_direction_cover(const std::vector<UnitVector>& apexes,
                                             Angle alpha,
                                             std::size_t extra_candidates,
                                             RandomStream rng,
                                             const std::vector<UnitVector>& extra_pool = {}) {
  if (apexes.empty()) throw error("direction cover of an empty apex set");
  if (apexes.size() > 64)
    throw desk_scale_error("direction cover limited to 64 apexes");
  const std::size_t dim = apexes[0].dim();

  DirectionCover result;
  for (const UnitVector& x : apexes) result.pool.push_back(x.negated());
  for (const UnitVector& xi : extra_pool) result.pool.push_back(xi);
  for (std::size_t s = 0; s < extra_candidates; ++s) {
    RandomStream sub = rng.split(s);
    result.pool.push_back(sample_uniform(dim, sub));
  }
  const std::size_t base = result.pool.size();
  for (std::size_t p = 0; p < base; ++p) {
    const Mask mask = detail::illuminable_mask(apexes, alpha, result.pool[p]);
    if (std::popcount(mask) < 2) continue;
    std::vector<UnitVector> hit;
    for (std::size_t i = 0; i < apexes.size(); ++i)
      if (mask & (Mask{1} << i)) hit.push_back(apexes[i].negated());
    try {
      result.pool.push_back(min_enclosing_cap(hit).center);
    } catch (const degenerate_center_error&) {
    }
  }

  result.pool_masks.reserve(result.pool.size());
  for (const UnitVector& xi : result.pool)
    result.pool_masks.push_back(detail::illuminable_mask(apexes, alpha, xi));

  const SetCoverResult cover = greedy_set_cover(apexes.size(), result.pool_masks);
  result.count = cover.size;
  result.chosen = cover.chosen;
  for (const std::size_t s : cover.chosen) result.directions.push_back(result.pool[s]);
  return result;
}

struct IlluminationOptions {
  bool exact = true;
  std::size_t exact_limit = kDefaultExactLimit;
  std::size_t mc_samples = 100'000;
  std::size_t extra_candidates = 256;
  std::uint64_t seed = 0;
};

/// Counting certificate for illumination: any single direction can
/// illuminate at most M apexes (M = max multiplicity of the antipodal cap
/// family), so at least ceil(|X|/M) directions are required. certified is
/// true only in exact mode; the Monte Carlo M underestimates multiplicity,
/// which makes the quotient an estimate, not a bound.
struct IlluminationCertificate {
  CoverCertificate certificate;
  bool certified = false;
  MultiplicityReport multiplicity;
  DirectionCover cover;
};

inline IlluminationCertificate illumination_lower_bound(
    const std::vector<UnitVector>& apexes, Angle alpha,
    const IlluminationOptions& options = {}) {
  if (apexes.empty()) throw error("illumination bound of an empty apex set");
  if (!check_witness_hypothesis(apexes, alpha))
    throw error("apex set violates the pairwise angle window [4a, pi-6a]");
  const Angle cone_radius(kPi / 2.0 - alpha.value());

  std::vector<UnitVector> reflected;
  reflected.reserve(apexes.size());
  for (const UnitVector& x : apexes) reflected.push_back(x.negated());

  IlluminationCertificate result;
  result.multiplicity.family_size = apexes.size();
  result.multiplicity.cap_radius = cone_radius;
  unsigned m_caps = 1;
  std::vector<UnitVector> deepest;
  if (options.exact) {
    ExactMultiplicity exact =
        multiplicity_exact(reflected, cone_radius, options.exact_limit);
    m_caps = std::max(1u, exact.max);
    deepest.push_back(exact.witness);
    result.multiplicity.exact_max = exact.max;
    result.multiplicity.exact_witness = std::move(exact.witness);
    result.certified = true;
  } else {
    result.multiplicity =
        multiplicity_mc(reflected, cone_radius, options.mc_samples,
                        RandomStream(derive_seed(options.seed, kMcSalt)));
    m_caps = std::max(1u, result.multiplicity.mc_max);
    if (result.multiplicity.mc_argmax) deepest.push_back(*result.multiplicity.mc_argmax);
  }

  // The deepest point found covers m_caps apexes at once; seeding it into
  // the pool keeps the greedy upper bound from missing an easy cover.
  result.cover = greedy_direction_cover(apexes, alpha, options.extra_candidates,
                                        RandomStream(derive_seed(options.seed, kCoverSalt)),
                                        deepest);

  CoverCertificate& cert = result.certificate;
  cert.universe_size = apexes.size();
  cert.upper_bound = result.cover.count;
  cert.lower_bound = (apexes.size() + m_caps - 1) / m_caps;
  if (!result.certified) cert.lower_bound = std::min(cert.lower_bound, cert.upper_bound);
  cert.lb_method = "multiplicity";
  cert.ub_method = "greedy";
  cert.parameters["alpha"] = alpha.value();
  cert.parameters["n"] = static_cast<double>(apexes[0].dim());
  cert.parameters["multiplicity"] = static_cast<double>(m_caps);
  cert.check();
  return result;
}

struct PipelineOptions {
  double epsilon = 0.05;
  std::uint64_t seed = 0;
  bool exact = true;
  std::optional<std::size_t> n_override;
  std::size_t exact_limit = kDefaultExactLimit;
  std::size_t ball_exact_limit = kBallCoverExactLimit;
  std::size_t samples_per_ring = 0;
  std::size_t mc_samples = 100'000;
  std::size_t extra_candidates = 256;
};

struct IlluminationPipelineResult {
  Configuration config;
  WitnessSet witness;
  double witness_diam = 0.0;
  double expected_diam = 0.0;
  IlluminationCertificate certificate;
  double reference_rate = 0.0;
};

/// Full illumination run: separated construction at psi = 6pi/14, witness
/// rings at alpha = pi/14 (so the witness set has diameter 2 cos(pi/14)),
/// then the counting certificate over the antipodal cones, whose radius
/// pi/2 - alpha equals psi. The reference rate cos(pi/14 - eps)^(-n) is
/// the growth this construction approaches as n grows.
inline IlluminationPipelineResult illumination_pipeline(std::size_t n,
                                                        const PipelineOptions& options) {
  const Angle alpha(kPi / 14.0);
  const Angle psi(6.0 * kPi / 14.0);
  if (!(options.epsilon > 0.0 && options.epsilon < kPi / 14.0))
    throw error("epsilon must lie in (0, pi/14)");
  const Angle phi(psi.value() + options.epsilon);
  if (std::abs((kPi / 2.0 - alpha.value()) - psi.value()) > 1e-12)
    throw error("cone radius and separation angle disagree");

  ConstructionParams params;
  params.dim = n;
  params.psi = psi;
  params.phi = phi;
  params.seed = options.seed;
  params.n_override = options.n_override;

  IlluminationPipelineResult result;
  result.config = construct_separated(params);
  if (!check_witness_hypothesis(result.config.points, alpha))
    throw error("separated construction unexpectedly violates the witness window");

  const std::size_t spr = options.samples_per_ring == 0 ? default_ring_samples(n)
                                                        : options.samples_per_ring;
  result.witness = build_witness(result.config.points, alpha, spr,
                                 derive_seed(options.seed, kWitnessSalt));
  result.witness_diam = witness_diameter(result.witness);
  result.expected_diam = 2.0 * std::cos(alpha.value());
  if (result.witness_diam > result.expected_diam + kAngleTol)
    throw error("witness diameter exceeds 2 cos(alpha)");

  IlluminationOptions cert_options;
  cert_options.exact = options.exact;
  cert_options.exact_limit = options.exact_limit;
  cert_options.mc_samples = options.mc_samples;
  cert_options.extra_candidates = options.extra_candidates;
  cert_options.seed = options.seed;
  result.certificate = illumination_lower_bound(result.config.points, alpha, cert_options);
  result.certificate.certificate.parameters["epsilon"] = options.epsilon;
  result.certificate.certificate.parameters["seed"] =
      static_cast<double>(options.seed);

  result.reference_rate =
      std::pow(std::cos(kPi / 14.0 - options.epsilon), -static_cast<double>(n));
  return result;
}

struct BallPipelineResult {
  Configuration config;
  std::vector<Vec> scaled_points;
  double scaled_diameter = 0.0;
  BallCoverResult cover;
  std::size_t membership_checked = 0;
  std::size_t membership_hits = 0;
  double reference_rate = 0.0;
};

/// Full ball-cover run: separated construction at psi = pi/3 keeps every
/// pairwise angle at most 2pi/3, so the point set has diameter at most
/// sqrt(3); shrinking by 1/sqrt(3) gives a diameter-1 set, which is then
/// covered by balls of diameter 1. The certificate lower-bounds how many
/// such balls any cover needs. Also reported: for each chosen ball center
/// c covering x_i, whether c/|c| lands in C(x_i, phi) (informational).
inline BallPipelineResult ball_cover_pipeline(std::size_t n,
                                              const PipelineOptions& options) {
  const Angle alpha(kPi / 6.0);
  const Angle psi(kPi / 3.0);
  if (!(options.epsilon > 0.0 && options.epsilon < kPi / 6.0))
    throw error("epsilon must lie in (0, pi/6)");
  const Angle phi(psi.value() + options.epsilon);

  ConstructionParams params;
  params.dim = n;
  params.psi = psi;
  params.phi = phi;
  params.seed = options.seed;
  params.n_override = options.n_override;

  BallPipelineResult result;
  result.config = construct_separated(params);
  if (!check_diameter_hypothesis(result.config.points, alpha))
    throw error("separated construction unexpectedly exceeds the angle ceiling");

  const double shrink = 1.0 / std::sqrt(3.0);
  result.scaled_points.reserve(result.config.points.size());
  for (const UnitVector& x : result.config.points)
    result.scaled_points.push_back(scaled(x.coords(), shrink));
  result.scaled_diameter = diameter(result.scaled_points);
  if (result.scaled_diameter > 1.0 + kAngleTol)
    throw error("scaled construction exceeds diameter 1");

  BallCoverOptions cover_options;
  cover_options.exact = options.exact;
  cover_options.exact_limit = options.ball_exact_limit;
  result.cover = ball_cover_number(result.scaled_points, 1.0, cover_options);
  result.cover.certificate.parameters["n"] = static_cast<double>(n);
  result.cover.certificate.parameters["epsilon"] = options.epsilon;
  result.cover.certificate.parameters["seed"] = static_cast<double>(options.seed);

  for (std::size_t b = 0; b < result.cover.centers.size(); ++b) {
    const Vec& c = result.cover.centers[b];
    if (norm(c) <= 1e-12) continue;
    const UnitVector direction{c};
    for (std::size_t i = 0; i < result.config.points.size(); ++i) {
      if (!(result.cover.covered[b] & (Mask{1} << i))) continue;
      ++result.membership_checked;
      if (cap_contains(SphericalCap(result.config.points[i], phi), direction))
        ++result.membership_hits;
    }
  }

  result.reference_rate = std::pow(2.0 / std::sqrt(3.0), static_cast<double>(n));
  return result;
}

}  // namespace capcert
