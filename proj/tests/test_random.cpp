#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <set>
#include <vector>

#include "capcert/random.hpp"
#include "capcert/sampling.hpp"

using namespace capcert;

TEST_CASE("streams are reproducible", "[random]") {
  RandomStream a(42), b(42);
  for (int i = 0; i < 100; ++i) REQUIRE(a.next_u64() == b.next_u64());
  RandomStream c(43);
  bool any_diff = false;
  RandomStream a2(42);
  for (int i = 0; i < 100; ++i) any_diff |= (a2.next_u64() != c.next_u64());
  REQUIRE(any_diff);
}

TEST_CASE("split streams do not depend on parent draws", "[random]") {
  RandomStream parent(7);
  RandomStream before = parent.split(3);
  parent.next_u64();
  parent.next_gaussian();
  RandomStream after = parent.split(3);
  for (int i = 0; i < 50; ++i) REQUIRE(before.next_u64() == after.next_u64());

  // distinct task indices give distinct streams
  std::set<std::uint64_t> firsts;
  for (std::uint64_t t = 0; t < 64; ++t) firsts.insert(RandomStream(7).split(t).next_u64());
  REQUIRE(firsts.size() == 64);
}

TEST_CASE("derived seeds separate phases", "[random]") {
  REQUIRE(derive_seed(1, 10) == derive_seed(1, 10));
  REQUIRE(derive_seed(1, 10) != derive_seed(1, 11));
  REQUIRE(derive_seed(1, 10) != derive_seed(2, 10));
}

TEST_CASE("uniform and gaussian draws look sane", "[random]") {
  RandomStream rng(123);
  double sum = 0, sumsq = 0;
  const int n = 100000;
  for (int i = 0; i < n; ++i) {
    const double g = rng.next_gaussian();
    sum += g;
    sumsq += g * g;
  }
  REQUIRE(std::abs(sum / n) < 0.02);
  REQUIRE(std::abs(sumsq / n - 1.0) < 0.03);

  for (int i = 0; i < 1000; ++i) {
    const double u = rng.next_double();
    REQUIRE(u >= 0.0);
    REQUIRE(u < 1.0);
  }
  for (int i = 0; i < 1000; ++i) REQUIRE(rng.next_below(7) < 7);
}

TEST_CASE("uniform sphere samples", "[random][sampling]") {
  RandomStream rng(5);
  Vec mean(4, 0.0);
  for (int i = 0; i < 20000; ++i) {
    UnitVector u = sample_uniform(4, rng);
    REQUIRE(std::abs(norm(u.coords()) - 1.0) < 1e-12);
    mean = sum(mean, u.coords());
  }
  for (double c : mean) REQUIRE(std::abs(c) / 20000 < 0.02);
  REQUIRE_THROWS_AS(sample_uniform(1, rng), error);
}

TEST_CASE("ring samples sit at the prescribed chord", "[random][sampling]") {
  RandomStream rng(9);
  const Angle alpha(kPi / 14);
  UnitVector x = sample_uniform(5, rng);
  for (int i = 0; i < 200; ++i) {
    UnitVector y = sample_ring(x, alpha, rng);
    REQUIRE(std::abs(distance(x.coords(), y.coords()) - 2 * std::cos(alpha.value())) < 1e-12);
    REQUIRE(std::abs(angle_between(x, y).value() - (kPi - 2 * alpha.value())) < 1e-12);
  }
}
