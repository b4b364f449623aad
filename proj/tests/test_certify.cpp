#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <set>
#include <vector>

#include "capcert/certify.hpp"

using namespace capcert;

TEST_CASE("greedy direction cover basics", "[certify]") {
  const Angle a(kPi / 14);
  UnitVector e1 = UnitVector::axis(3, 0), e2 = UnitVector::axis(3, 1);

  DirectionCover single = greedy_direction_cover({e1}, a, 16, RandomStream(1));
  REQUIRE(single.count == 1);

  // -(e1 + e2)/sqrt(2) covers both cones, so one direction suffices
  DirectionCover pair = greedy_direction_cover({e1, e2}, a, 16, RandomStream(1));
  REQUIRE(pair.count == 1);
  REQUIRE(detail::illuminable_mask({e1, e2}, a, pair.directions[0]) == 0b11);

  // every chosen direction set covers all apexes
  RandomStream rng(9);
  for (int rep = 0; rep < 10; ++rep) {
    std::vector<UnitVector> apexes;
    for (int i = 0; i < 6; ++i) apexes.push_back(sample_uniform(4, rng));
    DirectionCover cover = greedy_direction_cover(apexes, Angle(kPi / 6), 64, rng.split(rep));
    Mask all = 0;
    for (const UnitVector& xi : cover.directions)
      all |= detail::illuminable_mask(apexes, Angle(kPi / 6), xi);
    REQUIRE(all == full_mask(apexes.size()));
  }
}

TEST_CASE("illumination bound on a singleton", "[certify]") {
  IlluminationCertificate cert =
      illumination_lower_bound({UnitVector::axis(3, 0)}, Angle(kPi / 14));
  REQUIRE(cert.certified);
  REQUIRE(cert.certificate.lower_bound == 1);
  REQUIRE(cert.certificate.upper_bound == 1);
  REQUIRE(cert.multiplicity.exact_max == 1);
}

TEST_CASE("illumination bound rejects bad apex sets", "[certify]") {
  UnitVector e1 = UnitVector::axis(3, 0);
  UnitVector close(Vec{std::cos(0.05), std::sin(0.05), 0.0});
  REQUIRE_THROWS_AS(illumination_lower_bound({e1, close}, Angle(kPi / 14)), error);
  REQUIRE_THROWS_AS(illumination_lower_bound({}, Angle(kPi / 14)), error);
}

TEST_CASE("counting bound chains below the greedy cover", "[certify]") {
  // ceil(|X|/M) <= optimal cover over the pool <= greedy cover
  PipelineOptions options;
  options.seed = 2;
  for (std::size_t n : {3, 4, 5}) {
    IlluminationPipelineResult r = illumination_pipeline(n, options);
    const IlluminationCertificate& cert = r.certificate;
    REQUIRE(cert.certified);
    const std::size_t apex_count = cert.certificate.universe_size;
    if (apex_count <= 12) {
      SetCoverResult optimal = exact_set_cover(apex_count, cert.cover.pool_masks);
      REQUIRE(cert.certificate.lower_bound <= optimal.size);
      REQUIRE(optimal.size <= cert.certificate.upper_bound);
    }
  }
}

TEST_CASE("monte carlo mode yields an uncertified estimate", "[certify]") {
  PipelineOptions options;
  options.seed = 4;
  options.exact = false;
  options.mc_samples = 20000;
  IlluminationPipelineResult r = illumination_pipeline(4, options);
  REQUIRE_FALSE(r.certificate.certified);
  REQUIRE(r.certificate.certificate.lower_bound <= r.certificate.certificate.upper_bound);
  REQUIRE(r.certificate.multiplicity.mc_samples == 20000);
  REQUIRE_FALSE(r.certificate.multiplicity.exact_max.has_value());
}

TEST_CASE("illumination pipeline regression table", "[certify][pipeline]") {
  // |X| for seeds 0..9 at each n; M = |X| and a single direction covers
  // everything in every one of these runs
  const std::vector<std::vector<std::size_t>> kept = {
      {3, 3, 3, 3, 3, 3, 3, 3, 3, 3},  // n = 3
      {4, 4, 4, 4, 4, 4, 4, 4, 4, 4},  // n = 4
      {5, 4, 5, 4, 5, 5, 4, 5, 4, 5},  // n = 5
      {5, 6, 5, 5, 5, 5, 5, 5, 6, 5},  // n = 6
  };
  for (std::size_t n = 3; n <= 6; ++n) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      PipelineOptions options;
      options.seed = seed;
      IlluminationPipelineResult r = illumination_pipeline(n, options);
      INFO("n " << n << " seed " << seed);
      REQUIRE(r.config.points.size() == kept[n - 3][seed]);
      REQUIRE(r.certificate.multiplicity.exact_max == r.config.points.size());
      REQUIRE(r.certificate.certificate.lower_bound == 1);
      REQUIRE(r.certificate.certificate.upper_bound == 1);
      REQUIRE(r.witness_diam <= 2 * std::cos(kPi / 14) + 1e-9);
      REQUIRE(std::abs(r.witness_diam - r.expected_diam) < 1e-9);
      REQUIRE(std::abs(r.reference_rate -
                       std::pow(std::cos(kPi / 14 - 0.05), -double(n))) < 1e-12);
    }
  }
}

TEST_CASE("illuminable sets agree with cap multiplicity counting", "[certify]") {
  PipelineOptions options;
  options.seed = 6;
  IlluminationPipelineResult r = illumination_pipeline(4, options);
  std::vector<UnitVector> reflected;
  for (const UnitVector& x : r.config.points) reflected.push_back(x.negated());
  const Angle cone(kPi / 2 - kPi / 14);
  RandomStream rng(123);
  for (int t = 0; t < 200; ++t) {
    UnitVector xi = sample_uniform(4, rng);
    const unsigned depth = detail::containment_depth(reflected, cone, xi);
    REQUIRE(depth == illuminable_set(xi, r.witness).size());
  }
}

TEST_CASE("pipeline parameter validation", "[certify]") {
  PipelineOptions options;
  options.epsilon = 0.0;
  REQUIRE_THROWS_AS(illumination_pipeline(3, options), error);
  REQUIRE_THROWS_AS(ball_cover_pipeline(3, options), error);
  options.epsilon = kPi / 14;  // at the boundary, rejected
  REQUIRE_THROWS_AS(illumination_pipeline(3, options), error);
  options.epsilon = kPi / 6;
  REQUIRE_THROWS_AS(ball_cover_pipeline(3, options), error);
}

TEST_CASE("ball pipeline regression table", "[certify][pipeline]") {
  struct Row {
    std::size_t n, kept, lower, smax;
  };
  const std::vector<Row> rows = {
      {3, 3, 2, 2}, {4, 4, 2, 3}, {5, 7, 2, 5}, {6, 12, 3, 5}};
  for (const Row& row : rows) {
    PipelineOptions options;
    options.seed = 1;
    BallPipelineResult r = ball_cover_pipeline(row.n, options);
    INFO("n " << row.n);
    REQUIRE(r.config.points.size() == row.kept);
    REQUIRE(r.cover.certificate.lower_bound == row.lower);
    REQUIRE(r.cover.certificate.upper_bound == row.lower);
    REQUIRE(r.cover.max_coverable == row.smax);
    REQUIRE(r.scaled_diameter <= 1.0 + 1e-9);
    REQUIRE(r.cover.packing == 1);
    REQUIRE(std::abs(r.reference_rate - std::pow(2 / std::sqrt(3.0), double(row.n))) < 1e-12);
    // the counting bound from the certified max subset size stays below
    REQUIRE(multiplicity_style_bound(row.kept, r.cover.max_coverable) <=
            r.cover.certificate.lower_bound);
    // every membership probe hit in these runs
    REQUIRE(r.membership_checked > 0);
    REQUIRE(r.membership_hits == r.membership_checked);
  }
}

TEST_CASE("ball pipeline lower bound trend", "[certify][pipeline]") {
  // fixed candidate budget, growing dimension: the certified count climbs
  for (std::uint64_t seed : {1, 2, 3}) {
    const std::vector<std::size_t> want = {2, 2, 2, 2, 3};
    std::vector<std::size_t> got;
    for (std::size_t n = 3; n <= 7; ++n) {
      PipelineOptions options;
      options.seed = seed;
      options.n_override = 40;
      got.push_back(ball_cover_pipeline(n, options).cover.certificate.lower_bound);
    }
    INFO("seed " << seed);
    REQUIRE(got == want);
    for (std::size_t k = 1; k < got.size(); ++k) REQUIRE(got[k] >= got[k - 1]);
  }
}

TEST_CASE("pipelines are deterministic", "[certify]") {
  PipelineOptions options;
  options.seed = 12;
  IlluminationPipelineResult a = illumination_pipeline(4, options);
  IlluminationPipelineResult b = illumination_pipeline(4, options);
  REQUIRE(a.config.points.size() == b.config.points.size());
  for (std::size_t i = 0; i < a.config.points.size(); ++i)
    REQUIRE(a.config.points[i].coords() == b.config.points[i].coords());
  REQUIRE(a.witness_diam == b.witness_diam);
  REQUIRE(a.certificate.certificate.lower_bound == b.certificate.certificate.lower_bound);

  BallPipelineResult c = ball_cover_pipeline(4, options);
  BallPipelineResult d = ball_cover_pipeline(4, options);
  REQUIRE(c.scaled_diameter == d.scaled_diameter);
  REQUIRE(c.cover.certificate.upper_bound == d.cover.certificate.upper_bound);
}
