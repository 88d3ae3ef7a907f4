#pragma once

#include <string>

namespace rdmlab {

/// Volume of the intersection of two radius-r balls with centers d apart:
/// 0 for d >= 2r, (pi/12)(4r + d)(2r - d)^2 otherwise.
double lens_volume(double d, double r);

struct FdlQuadrature {
  double r_max_factor = 50.0;  // integrate to r_max = r_max_factor * d
  int intervals = 16384;       // Simpson subintervals (must be even)
  std::string rule = "simpson";
};

/// Integral over r in [d/2, infinity) of lens_volume(d, r) / (pi r^5):
/// composite Simpson on [d/2, r_max] plus the analytic tail. Equals 1/d.
double fdl_radial_integral(double d, const FdlQuadrature& quad = {});

}  // namespace rdmlab
