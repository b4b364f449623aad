// Cover the unit equilateral triangle with balls of diameter 1: one ball is
// never enough (the certificate's lower bound says so), two suffice.
#include <cmath>
#include <cstdio>

#include "capcert/capcert.hpp"

int main() {
  using namespace capcert;
  const std::vector<Vec> triangle = {
      {0.0, 0.0}, {1.0, 0.0}, {0.5, std::sqrt(3.0) / 2}};

  const BallCoverResult r = ball_cover_number(triangle, 1.0);
  std::printf("points             : %zu\n", triangle.size());
  std::printf("balls needed       : %zu (lower bound %zu, %s)\n",
              r.certificate.upper_bound, r.certificate.lower_bound,
              r.certificate.lb_method.c_str());
  for (std::size_t b = 0; b < r.centers.size(); ++b) {
    std::printf("ball %zu center     : (", b);
    for (std::size_t k = 0; k < r.centers[b].size(); ++k)
      std::printf("%s%.6f", k ? ", " : "", r.centers[b][k]);
    std::printf(") covers mask %llx\n",
                static_cast<unsigned long long>(r.covered[b]));
  }

  // The count is scale-free: shrink everything by the same factor and the
  // same certificate comes back.
  std::vector<Vec> half;
  for (const Vec& p : triangle) half.push_back(scaled(p, 0.5));
  const BallCoverResult s = ball_cover_number(half, 0.5);
  std::printf("half-size count    : %zu\n", s.certificate.upper_bound);
  return 0;
}
