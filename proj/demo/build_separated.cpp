// Build a separated point set on S^3 and report how lossy the deletion was.
#include <cstdio>

#include "capcert/capcert.hpp"

int main() {
  using namespace capcert;
  ConstructionParams params;
  params.dim = 4;
  params.psi = Angle(kPi / 3);
  params.phi = Angle(kPi / 3 + 0.05);
  params.seed = 42;

  const Configuration config = construct_separated(params);
  const SeparationReport report = verify_separation(config.points, params.psi);

  std::printf("candidates sampled : %zu\n", config.candidate_count);
  std::printf("bad pairs found    : %zu\n", config.bad_pair_count);
  std::printf("points kept        : %zu\n", config.points.size());
  std::printf("pairwise angles    : [%.6f, %.6f] rad (window [%.6f, %.6f])\n",
              report.min_angle, report.max_angle, params.psi.value(),
              kPi - params.psi.value());
  std::printf("separation holds   : %s\n", report.ok ? "yes" : "NO");
  return report.ok ? 0 : 1;
}
