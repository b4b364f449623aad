#pragma once

#include <map>
#include <string>

#include "capcert/geometry.hpp"

namespace capcert {

/// Machine-checkable (lower, upper) bound pair on a covering quantity,
/// tagged with the method that produced each side.
struct CoverCertificate {
  std::size_t universe_size = 0;
  std::size_t lower_bound = 0;
  std::size_t upper_bound = 0;
  std::string lb_method;  // multiplicity | packing | exact
  std::string ub_method;  // greedy | exact
  std::map<std::string, double> parameters;

  void check() const {
    if (lower_bound > upper_bound)
      throw error("certificate bounds crossed: lower > upper");
    if (lb_method == "exact" && lower_bound != upper_bound)
      throw error("exact certificate must have matching bounds");
  }
};

}  // namespace capcert
