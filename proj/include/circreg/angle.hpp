#ifndef CIRCREG_ANGLE_HPP
#define CIRCREG_ANGLE_HPP

#include <cmath>

namespace circreg {

inline constexpr double kPi = 3.141592653589793238462643383279502884;
inline constexpr double kTwoPi = 2.0 * kPi;

/// Direction on the unit circle, stored as radians in [-pi, pi).
///
/// Construction always goes through wrapping, so the range invariant holds
/// for every live instance. Comparison is by representative value; callers
/// that need "same point on the circle" semantics should compare through
/// circ_dist.
class Angle {
 public:
  /// Zero angle.
  constexpr Angle() noexcept : rad_(0.0) {}

  /// Wraps an arbitrary finite radian value into [-pi, pi).
  /// Throws std::invalid_argument on NaN or infinity.
  static Angle wrap(double radians);

  [[nodiscard]] double radians() const noexcept { return rad_; }

  friend bool operator==(Angle a, Angle b) noexcept { return a.rad_ == b.rad_; }
  friend bool operator!=(Angle a, Angle b) noexcept { return a.rad_ != b.rad_; }

 private:
  constexpr explicit Angle(double wrapped) noexcept : rad_(wrapped) {}

  double rad_;
};

/// Wraps radians into [-pi, pi).
///
/// Single floating remainder, not iterative subtraction, so the cost is flat
/// in |theta| and the result stays within 1e-9 of the exact reduction for
/// |theta| <= 1e6. The output is congruent to theta mod 2*pi.
Angle wrap(double radians);

/// Point in the plane used as an (ordinate, abscissa) direction witness.
/// The origin carries no direction and is rejected by atan2_wrapped.
struct PlanePoint {
  double y = 0.0;  ///< sine-like component (first atan2 argument)
  double x = 0.0;  ///< cosine-like component (second atan2 argument)

  [[nodiscard]] bool is_origin() const noexcept { return y == 0.0 && x == 0.0; }
};

/// Four-quadrant arctangent mapped into [-pi, pi).
///
/// Matches std::atan2 except on the negative real axis and at the origin:
///   atan2_wrapped(0, x<0) = -pi   (std::atan2 gives +pi there), and
///   atan2_wrapped(0, 0) throws UndefinedDirectionError.
/// A +pi value reachable only through rounding is wrapped to -pi so the
/// Angle range invariant holds.
Angle atan2_wrapped(double y, double x);
Angle atan2_wrapped(const PlanePoint& p);

/// Circular squared-chord distance d(a, b) = 1 - cos(a - b), in [0, 2].
///
/// Equals half the squared Euclidean distance between the corresponding
/// points on the unit circle; its square root is a metric.
double circ_dist(Angle a, Angle b) noexcept;

}  // namespace circreg

#endif  // CIRCREG_ANGLE_HPP
