#include "circreg/angle.hpp"

#include <cmath>
#include <stdexcept>

#include "circreg/errors.hpp"

namespace circreg {

Angle Angle::wrap(double radians) {
  if (!std::isfinite(radians)) {
    throw std::invalid_argument("Angle::wrap: non-finite input");
  }
  // std::remainder lands in [-pi, pi] with the quotient rounded to nearest,
  // exact for the representable modulus; only the closed right endpoint
  // needs folding to keep the half-open range.
  double r = std::remainder(radians, kTwoPi);
  if (r >= kPi) r -= kTwoPi;
  if (r < -kPi) r = -kPi;  // guards against remainder rounding just below -pi
  return Angle(r);
}

Angle wrap(double radians) { return Angle::wrap(radians); }

Angle atan2_wrapped(double y, double x) {
  if (std::isnan(y) || std::isnan(x)) {
    throw std::invalid_argument("atan2_wrapped: NaN component");
  }
  if (y == 0.0 && x == 0.0) {
    throw UndefinedDirectionError("atan2_wrapped: direction of (0, 0) is undefined");
  }
  double value = 0.0;
  if (x > 0.0) {
    value = (y == 0.0) ? 0.0 : std::atan(y / x);
  } else if (x == 0.0) {
    value = (y > 0.0) ? kPi / 2 : -kPi / 2;
  } else if (y > 0.0) {
    value = std::atan(y / x) + kPi;  // second quadrant, atan term in (-pi/2, 0)
  } else {
    value = std::atan(y / x) - kPi;  // third quadrant and the (y = 0, x < 0) ray
  }
  // value lies in [-pi, pi]; +pi is reachable only when y/x underflows to -0
  // in the second quadrant, and gets folded onto the equivalent -pi.
  if (value >= kPi) value -= kTwoPi;
  return Angle::wrap(value);
}

Angle atan2_wrapped(const PlanePoint& p) { return atan2_wrapped(p.y, p.x); }

double circ_dist(Angle a, Angle b) noexcept {
  double d = 1.0 - std::cos(a.radians() - b.radians());
  if (d < 0.0) d = 0.0;  // cos can exceed 1 by one ulp
  if (d > 2.0) d = 2.0;
  return d;
}

}  // namespace circreg
