#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "capcert/construct.hpp"
#include "capcert/witness.hpp"

using namespace capcert;

namespace {

UnitVector rotated_in_plane(double theta, std::size_t dim) {
  Vec v(dim, 0.0);
  v[0] = std::cos(theta);
  v[1] = std::sin(theta);
  return UnitVector(std::move(v));
}

}  // namespace

TEST_CASE("pairwise angle hypotheses", "[witness]") {
  UnitVector e1 = UnitVector::axis(3, 0), e2 = UnitVector::axis(3, 1);
  SECTION("diameter window theta <= pi - 2a") {
    REQUIRE(check_diameter_hypothesis({e1, e2}, Angle(kPi / 6)));
    REQUIRE_FALSE(check_diameter_hypothesis({e1, e1.negated()}, Angle(kPi / 6)));
    // boundary pair exactly at pi - 2a passes
    UnitVector b = rotated_in_plane(kPi - 2 * (kPi / 6), 3);
    REQUIRE(check_diameter_hypothesis({e1, b}, Angle(kPi / 6)));
  }
  SECTION("witness window 4a <= theta <= pi - 6a") {
    const Angle a(kPi / 14);
    REQUIRE(check_witness_hypothesis({e1, e2}, a));       // pi/2 in [2pi/7, 4pi/7]
    REQUIRE(check_witness_hypothesis({e1}, a));           // singletons are free
    UnitVector tight = rotated_in_plane(3 * kPi / 14, 3); // below 4a = 4pi/14
    REQUIRE_FALSE(check_witness_hypothesis({e1, tight}, a));
    UnitVector wide = rotated_in_plane(kPi - 5 * kPi / 14, 3);  // above pi - 6a
    REQUIRE_FALSE(check_witness_hypothesis({e1, wide}, a));
    // alpha > pi/10 leaves no room for a second point
    REQUIRE_FALSE(check_witness_hypothesis({e1, e2}, Angle(kPi / 6)));
  }
  REQUIRE_THROWS_AS(check_diameter_hypothesis({e1}, Angle(kPi / 5)), error);
  REQUIRE_THROWS_AS(check_witness_hypothesis({e1}, Angle(0.0)), error);
}

TEST_CASE("witness construction", "[witness]") {
  const Angle a(kPi / 6);
  UnitVector x = UnitVector::axis(4, 0);
  WitnessSet w = build_witness({x}, a, 4, 7);
  REQUIRE(w.apexes.size() == 1);
  REQUIRE(w.ring_samples.size() == 1);
  REQUIRE(w.ring_samples[0].size() == 4);
  for (const UnitVector& y : w.ring_samples[0]) {
    // alpha = pi/6: chord 2 cos(pi/6) = sqrt(3)
    REQUIRE(std::abs(distance(x.coords(), y.coords()) - std::sqrt(3.0)) < 1e-12);
  }
  REQUIRE(witness_points(w).size() == 5);
  REQUIRE(std::abs(witness_diameter(w) - std::sqrt(3.0)) < 1e-9);

  WitnessSet again = build_witness({x}, a, 4, 7);
  for (std::size_t s = 0; s < 4; ++s)
    REQUIRE(w.ring_samples[0][s].coords() == again.ring_samples[0][s].coords());

  REQUIRE(default_ring_samples(3) == 64);
  REQUIRE(default_ring_samples(1000) == 2000);
  REQUIRE_THROWS_AS(build_witness({}, a, 4, 7), error);
}

TEST_CASE("witness hypothesis is enforced unless disabled", "[witness]") {
  UnitVector x = UnitVector::axis(3, 0);
  const Angle a(kPi / 14);
  UnitVector close = rotated_in_plane(0.05, 3);
  REQUIRE_THROWS_AS(build_witness({x, close}, a, 8, 1), error);
  WitnessSet w = build_witness({x, x.negated()}, a, 8, 1, false);
  // an antipodal apex pair drives the diameter to 2, past 2 cos(alpha)
  REQUIRE(witness_diameter(w) >= 2.0 - 1e-12);
}

TEST_CASE("witness diameter equals 2 cos(alpha) on constructed sets", "[witness]") {
  ConstructionParams params;
  params.dim = 4;
  params.psi = Angle(6 * kPi / 14);
  params.phi = Angle(6 * kPi / 14 + 0.05);
  params.seed = 3;
  Configuration config = construct_separated(params);
  const Angle a(kPi / 14);
  REQUIRE(check_witness_hypothesis(config.points, a));
  WitnessSet w = build_witness(config.points, a, 64, 11);
  const double want = 2 * std::cos(kPi / 14);
  REQUIRE(std::abs(witness_diameter(w) - want) < 1e-9);
  // every cross pair obeys the bound, every apex realizes it on its own ring
  const auto pts = witness_points(w);
  for (const UnitVector& p : pts)
    for (const UnitVector& q : pts)
      REQUIRE(distance(p.coords(), q.coords()) <= want + 1e-9);
}

TEST_CASE("illumination cones", "[witness]") {
  UnitVector x = UnitVector::axis(3, 0);
  const Angle a(kPi / 14);
  ConeConstraint cone = illumination_cone(x, a);
  REQUIRE(cone.apex.coords() == x.coords());
  REQUIRE(std::abs(cone.cone.radius.value() - (kPi / 2 - kPi / 14)) < 1e-15);
  REQUIRE(cap_contains(cone.cone, x.negated()));
  REQUIRE_FALSE(cap_contains(cone.cone, x));
}

TEST_CASE("illuminable set of a direction", "[witness]") {
  const Angle a(kPi / 14);
  UnitVector e1 = UnitVector::axis(3, 0), e2 = UnitVector::axis(3, 1);
  WitnessSet w = build_witness({e1, e2}, a, 4, 5);
  REQUIRE(illuminable_set(e1.negated(), w) == std::vector<std::size_t>{0});
  REQUIRE(illuminable_set(e2.negated(), w) == std::vector<std::size_t>{1});
  // the diagonal -(e1+e2)/sqrt(2) is within pi/2 - a of both antipodes
  UnitVector diag(Vec{-1.0, -1.0, 0.0});
  REQUIRE(illuminable_set(diag, w) == std::vector<std::size_t>{0, 1});
  // definitional consistency with cap containment
  RandomStream rng(8);
  for (int t = 0; t < 100; ++t) {
    UnitVector xi = sample_uniform(3, rng);
    auto hit = illuminable_set(xi, w);
    std::vector<std::size_t> manual;
    for (std::size_t i = 0; i < w.apexes.size(); ++i)
      if (angle_between(xi, w.apexes[i].negated()).value() <= kPi / 2 - a.value() + 1e-12)
        manual.push_back(i);
    REQUIRE(hit == manual);
  }
}

TEST_CASE("cone necessity certificate", "[witness]") {
  const Angle a(kPi / 6);
  UnitVector x = UnitVector::axis(3, 0);
  UnitVector xi = UnitVector::axis(3, 1);  // orthogonal: outside C(-x, pi/2 - a)
  const auto grid = default_t_grid();
  ConeNecessityResult r = verify_cone_necessity(x, xi, a, grid);
  REQUIRE(r.ok);
  REQUIRE(std::abs(r.chord - 2 * std::cos(kPi / 6)) < 1e-12);
  REQUIRE(r.distances.size() == grid.size());

  // closed form: d(t)^2 = chord^2 + t^2 - 2 t chord cos(theta(y - x, xi))
  Vec from_apex = difference(r.blocking_point, x.coords());
  const double c = dot(from_apex, xi.coords()) / norm(from_apex);
  REQUIRE(c < 0.0);
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const double t = grid[k];
    const double want = std::sqrt(r.chord * r.chord + t * t - 2 * t * r.chord * c);
    REQUIRE(std::abs(r.distances[k] - want) < 1e-12);
    REQUIRE(r.distances[k] > r.chord);
  }

  // the t -> 0 limit recovers the chord itself
  ConeNecessityResult tiny = verify_cone_necessity(x, xi, a, {1e-12});
  REQUIRE(std::abs(tiny.distances[0] - tiny.chord) < 1e-9);
}

TEST_CASE("cone necessity rejects bad inputs", "[witness]") {
  const Angle a(kPi / 14);
  UnitVector x = UnitVector::axis(3, 0);
  const auto grid = default_t_grid();
  // a direction deep inside the cone
  REQUIRE_THROWS_AS(verify_cone_necessity(x, x.negated(), a, grid), error);
  UnitVector inside(Vec{-std::cos(0.2), std::sin(0.2), 0.0});
  REQUIRE_THROWS_AS(verify_cone_necessity(x, inside, a, grid), error);
  // xi parallel to x leaves the cutting plane undefined
  REQUIRE_THROWS_AS(verify_cone_necessity(x, x, a, grid), error);
}

TEST_CASE("cone necessity holds over random directions", "[witness]") {
  const auto grid = default_t_grid();
  RandomStream rng(321);
  for (std::size_t dim : {2, 3, 5, 8}) {
    for (double av : {kPi / 14, kPi / 10, kPi / 6}) {
      const Angle a(av);
      int done = 0;
      while (done < 250) {
        UnitVector x = sample_uniform(dim, rng);
        UnitVector xi = sample_uniform(dim, rng);
        const double cone_angle = angle_between(xi, x.negated()).value();
        if (cone_angle <= kPi / 2 - av + 1e-3) continue;  // outside by a margin
        if (std::abs(dot(xi.coords(), x.coords())) > 1.0 - 1e-9) continue;
        ConeNecessityResult r = verify_cone_necessity(x, xi, a, grid);
        REQUIRE(r.ok);
        REQUIRE(std::abs(r.chord - 2 * std::cos(av)) < 1e-12);
        ++done;
      }
    }
  }
}
