#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <numeric>
#include <string>
#include <vector>

#include "capcert/parallel.hpp"

using namespace capcert;

namespace {

struct WorkerEnv {
  explicit WorkerEnv(const char* v) { ::setenv("CAPCERT_WORKERS", v, 1); }
  ~WorkerEnv() { ::unsetenv("CAPCERT_WORKERS"); }
};

std::string concat_run() {
  return parallel_map_reduce<std::string>(
      26, std::string{}, [](std::size_t i) { return std::string(1, char('a' + i)); },
      [](std::string acc, std::string piece) { return acc + piece; });
}

}  // namespace

TEST_CASE("worker count env handling", "[parallel]") {
  {
    WorkerEnv e("3");
    REQUIRE(worker_count() == 3);
  }
  {
    WorkerEnv e("0");
    REQUIRE(worker_count() >= 1);
  }
  REQUIRE(worker_count() == 1);
}

TEST_CASE("parallel_for covers every index once", "[parallel]") {
  WorkerEnv e("4");
  std::vector<int> hits(1000, 0);
  parallel_for(1000, [&](std::size_t i) { hits[i]++; });
  REQUIRE(std::accumulate(hits.begin(), hits.end(), 0) == 1000);
  for (int h : hits) REQUIRE(h == 1);
  parallel_for(0, [&](std::size_t) { FAIL("must not be called"); });
}

TEST_CASE("map-reduce merges in index order for every worker count", "[parallel]") {
  const std::string want = "abcdefghijklmnopqrstuvwxyz";
  REQUIRE(concat_run() == want);
  for (const char* w : {"1", "2", "4", "7"}) {
    WorkerEnv e(w);
    REQUIRE(concat_run() == want);
  }
}
