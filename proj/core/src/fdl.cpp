#include "rdmlab/fdl.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace rdmlab {

double lens_volume(double d, double r) {
  if (d < 0.0 || r <= 0.0)
    throw std::invalid_argument("lens_volume: need d >= 0, r > 0");
  if (d >= 2.0 * r) return 0.0;
  const double h = 2.0 * r - d;
  return std::numbers::pi / 12.0 * (4.0 * r + d) * h * h;
}

double fdl_radial_integral(double d, const FdlQuadrature& quad) {
  if (d <= 0.0) throw std::invalid_argument("fdl_radial_integral: d <= 0");
  if (quad.intervals < 2 || quad.intervals % 2 != 0)
    throw std::invalid_argument("fdl_radial_integral: need even intervals");
  const double r_lo = 0.5 * d;
  const double r_hi = quad.r_max_factor * d;
  auto f = [d](double r) {
    return lens_volume(d, r) / (std::numbers::pi * r * r * r * r * r);
  };
  // Composite Simpson.
  const int m = quad.intervals;
  const double h = (r_hi - r_lo) / m;
  double acc = f(r_lo) + f(r_hi);
  for (int i = 1; i < m; ++i) acc += (i % 2 ? 4.0 : 2.0) * f(r_lo + i * h);
  double result = acc * h / 3.0;
  // Analytic tail of the integrand 4/(3r^2) - d/r^3 + d^3/(12 r^5) over
  // [r_hi, infinity).
  result += 4.0 / (3.0 * r_hi) - d / (2.0 * r_hi * r_hi) +
            d * d * d / (48.0 * r_hi * r_hi * r_hi * r_hi);
  return result;
}

}  // namespace rdmlab
