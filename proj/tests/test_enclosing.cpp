#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "capcert/enclosing.hpp"
#include "capcert/random.hpp"
#include "capcert/sampling.hpp"

using namespace capcert;

namespace {

// Local optimality probe: the max distance from any perturbed center must
// not drop below the reported radius. The objective is convex, so passing
// this for many random perturbations pins the optimum.
void check_ball_optimal(const std::vector<Vec>& pts, const Ball& ball, RandomStream& rng) {
  const std::size_t n = ball.center.size();
  const auto max_dist = [&pts](const Vec& c) {
    double worst = 0.0;
    for (const Vec& p : pts) worst = std::max(worst, distance(c, p));
    return worst;
  };
  REQUIRE(std::abs(max_dist(ball.center) - ball.radius) < 1e-9);
  for (double scale : {1e-2, 1e-4}) {
    for (int trial = 0; trial < 100; ++trial) {
      Vec c = ball.center;
      for (std::size_t k = 0; k < n; ++k) c[k] += scale * rng.next_gaussian();
      REQUIRE(max_dist(c) > ball.radius - 1e-12);
    }
  }
}

}  // namespace

TEST_CASE("enclosing ball of simple sets", "[enclosing]") {
  SECTION("single point") {
    Ball b = min_enclosing_ball({{1.0, 2.0, 3.0}});
    REQUIRE(b.radius == 0.0);
    REQUIRE(b.center == Vec{1.0, 2.0, 3.0});
    REQUIRE(b.support == std::vector<std::size_t>{0});
  }
  SECTION("two points -> midpoint") {
    Ball b = min_enclosing_ball({{0.0, 0.0}, {2.0, 0.0}});
    REQUIRE(std::abs(b.radius - 1.0) < 1e-12);
    REQUIRE(std::abs(b.center[0] - 1.0) < 1e-12);
    REQUIRE(std::abs(b.center[1]) < 1e-12);
  }
  SECTION("unit equilateral triangle -> circumradius 1/sqrt(3)") {
    Ball b = min_enclosing_ball({{0.0, 0.0}, {1.0, 0.0}, {0.5, std::sqrt(3.0) / 2}});
    REQUIRE(std::abs(b.radius - 1 / std::sqrt(3.0)) < 1e-12);
    REQUIRE(b.support.size() == 3);
  }
  SECTION("obtuse triangle -> diametral pair") {
    Ball b = min_enclosing_ball({{0.0, 0.0}, {4.0, 0.0}, {2.0, 0.1}});
    REQUIRE(std::abs(b.radius - 2.0) < 1e-12);
    REQUIRE(b.support.size() == 2);
  }
  SECTION("duplicates") {
    Ball b = min_enclosing_ball({{1.0, 1.0}, {1.0, 1.0}, {1.0, 1.0}});
    REQUIRE(b.radius < 1e-12);
  }
  REQUIRE_THROWS_AS(min_enclosing_ball({}), error);
  REQUIRE_THROWS_AS(min_enclosing_ball({{1.0, 0.0}, {1.0, 0.0, 0.0}}), dimension_mismatch);
}

TEST_CASE("enclosing ball on random sets", "[enclosing]") {
  RandomStream rng(2024);
  for (std::size_t dim : {2, 3, 5}) {
    for (int rep = 0; rep < 30; ++rep) {
      const std::size_t count = 2 + rng.next_below(9);
      std::vector<Vec> pts(count, Vec(dim));
      for (Vec& p : pts)
        for (double& c : p) c = 3.0 * rng.next_gaussian();
      Ball b = min_enclosing_ball(pts);
      for (const Vec& p : pts) REQUIRE(distance(b.center, p) <= b.radius + 1e-9);
      for (std::size_t s : b.support)
        REQUIRE(std::abs(distance(b.center, pts[s]) - b.radius) < 1e-7);
      REQUIRE(b.support.size() <= dim + 1);
      check_ball_optimal(pts, b, rng);
    }
  }
}

TEST_CASE("enclosing cap of simple sets", "[enclosing]") {
  SECTION("singleton -> radius 0") {
    EnclosingCap c = min_enclosing_cap({UnitVector::axis(3, 0)});
    REQUIRE(c.radius.value() == 0.0);
    REQUIRE(std::abs(c.center[0] - 1.0) < 1e-12);
  }
  SECTION("two points -> geodesic midpoint, half the angle") {
    UnitVector x = UnitVector::axis(3, 0), y = UnitVector::axis(3, 1);
    EnclosingCap c = min_enclosing_cap({x, y});
    REQUIRE(std::abs(c.radius.value() - kPi / 4) < 1e-9);
    REQUIRE(std::abs(c.center[0] - c.center[1]) < 1e-9);
  }
  SECTION("orthonormal triple -> radius arccos(1/sqrt(3))") {
    std::vector<UnitVector> pts = {UnitVector::axis(3, 0), UnitVector::axis(3, 1),
                                   UnitVector::axis(3, 2)};
    EnclosingCap c = min_enclosing_cap(pts);
    REQUIRE(std::abs(c.radius.value() - std::acos(1 / std::sqrt(3.0))) < 1e-9);
    for (const UnitVector& p : pts)
      REQUIRE(angle_between(c.center, p).value() <= c.radius.value() + 1e-9);
  }
  SECTION("equatorial triple is degenerate") {
    std::vector<UnitVector> eq;
    for (int k = 0; k < 3; ++k) {
      const double t = 2 * kPi * k / 3;
      eq.push_back(UnitVector(Vec{std::cos(t), std::sin(t), 0.0}));
    }
    REQUIRE_THROWS_AS(min_enclosing_cap(eq), degenerate_center_error);

    RandomStream rng(11);
    EnclosingCap c = min_enclosing_cap_or_search(eq, rng);
    REQUIRE(std::abs(c.radius.value() - kPi / 2) < 1e-3);
    REQUIRE(std::abs(c.center[2]) > 0.999);
  }
}

TEST_CASE("enclosing cap on random sets", "[enclosing]") {
  RandomStream rng(77);
  for (std::size_t dim : {3, 4}) {
    for (int rep = 0; rep < 30; ++rep) {
      // clustered points, so the optimum stays below pi/2
      RandomStream local = rng.split(rep + 100 * dim);
      UnitVector anchor = sample_uniform(dim, local);
      std::vector<UnitVector> pts;
      const std::size_t count = 2 + local.next_below(8);
      for (std::size_t i = 0; i < count; ++i) {
        Vec v = anchor.coords();
        for (double& c : v) c += 0.4 * local.next_gaussian();
        pts.push_back(UnitVector(std::move(v)));
      }
      EnclosingCap c = min_enclosing_cap(pts);
      double worst = 0.0;
      for (const UnitVector& p : pts) {
        const double a = angle_between(c.center, p).value();
        REQUIRE(a <= c.radius.value() + 1e-9);
        worst = std::max(worst, a);
      }
      REQUIRE(std::abs(worst - c.radius.value()) < 1e-12);
      // optimality probe on the sphere
      for (int trial = 0; trial < 60; ++trial) {
        Vec moved = c.center.coords();
        for (double& x : moved) x += 1e-3 * local.next_gaussian();
        UnitVector cand{std::move(moved)};
        double m = 0.0;
        for (const UnitVector& p : pts) m = std::max(m, angle_between(cand, p).value());
        REQUIRE(m > c.radius.value() - 1e-12);
      }
    }
  }
}
