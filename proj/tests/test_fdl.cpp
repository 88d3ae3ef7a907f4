#include <doctest.h>

#include <cmath>
#include <numbers>

#include "rdmlab/fdl.hpp"

using namespace rdmlab;

TEST_CASE("lens volume limiting cases") {
  // Coincident spheres: the lens is the full ball.
  CHECK(lens_volume(0.0, 1.0) ==
        doctest::Approx(4.0 / 3.0 * std::numbers::pi).epsilon(1e-15));
  // Separation beyond 2r: no overlap.
  CHECK(lens_volume(2.0, 1.0) == 0.0);
  CHECK(lens_volume(5.0, 1.0) == 0.0);
  // d = r: (pi/12)(5r)(r)^2.
  for (double r : {0.5, 1.0, 3.0})
    CHECK(lens_volume(r, r) ==
          doctest::Approx(std::numbers::pi / 12.0 * 5.0 * r * r * r)
              .epsilon(1e-15));
  CHECK_THROWS(lens_volume(-1.0, 1.0));
  CHECK_THROWS(lens_volume(1.0, 0.0));
}

TEST_CASE("lens volume is monotone in d and scales like r^3") {
  double prev = lens_volume(0.0, 1.0);
  for (double d = 0.1; d < 2.0; d += 0.1) {
    const double v = lens_volume(d, 1.0);
    CHECK(v < prev);
    prev = v;
  }
  const double base = lens_volume(1.0, 2.0);
  CHECK(lens_volume(2.0, 4.0) == doctest::Approx(8.0 * base).epsilon(1e-14));
}

TEST_CASE("radial integral reproduces 1/d") {
  for (double d : {0.5, 1.0, 2.0, 7.5}) {
    const double v = fdl_radial_integral(d);
    CHECK(std::abs(v - 1.0 / d) < 1e-6 / d);
  }
}

TEST_CASE("quadrature converges with refinement") {
  const double d = 1.3;
  FdlQuadrature coarse;
  coarse.intervals = 128;
  FdlQuadrature fine;
  fine.intervals = 32768;
  const double err_coarse = std::abs(fdl_radial_integral(d, coarse) - 1.0 / d);
  const double err_fine = std::abs(fdl_radial_integral(d, fine) - 1.0 / d);
  CHECK(err_fine <= err_coarse);
  CHECK(err_fine < 1e-9);
}

TEST_CASE("invalid arguments are rejected") {
  CHECK_THROWS(fdl_radial_integral(0.0));
  CHECK_THROWS(fdl_radial_integral(-2.0));
  FdlQuadrature odd;
  odd.intervals = 3;
  CHECK_THROWS(fdl_radial_integral(1.0, odd));
}
