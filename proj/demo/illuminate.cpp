// Run the illumination pipeline in S^3: separated apexes, constant-width
// witness set, and a certified lower bound on how many directions are
// needed to illuminate every apex.
#include <cmath>
#include <cstdio>

#include "capcert/capcert.hpp"

int main() {
  using namespace capcert;
  PipelineOptions options;
  options.seed = 7;

  const IlluminationPipelineResult r = illumination_pipeline(4, options);
  const CoverCertificate& cert = r.certificate.certificate;

  std::printf("apexes kept        : %zu\n", r.config.points.size());
  std::printf("witness points     : %zu\n", witness_points(r.witness).size());
  std::printf("witness diameter   : %.12f (target %.12f)\n", r.witness_diam,
              2 * std::cos(kPi / 14));
  std::printf("directions needed  : between %zu and %zu (%s / %s)\n",
              cert.lower_bound, cert.upper_bound, cert.lb_method.c_str(),
              cert.ub_method.c_str());
  std::printf("certified          : %s\n", r.certificate.certified ? "yes" : "no");
  std::printf("reference rate     : %.6f\n", r.reference_rate);
  return 0;
}
