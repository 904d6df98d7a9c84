#include "circreg/angle.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "circreg/errors.hpp"

namespace circreg {
namespace {

// Independent reduction oracle: iterative subtraction of the true 2*pi kept
// in extended precision. Trivially correct, but only for moderate |theta|:
// each subtraction rounds, so the error grows with the turn count.
double wrap_oracle(double theta) {
  const long double pi = 3.14159265358979323846264338327950288L;
  const long double two_pi = 2.0L * pi;
  long double t = theta;
  while (t >= pi) t -= two_pi;
  while (t < -pi) t += two_pi;
  return static_cast<double>(t);
}

// Reduction oracle for large |theta|: subtracts 2*pi scaled by exact powers
// of two, so only ~log2(|theta|) roundings occur instead of one per turn.
double wrap_oracle_ladder(double theta) {
  const long double pi = 3.14159265358979323846264338327950288L;
  const long double two_pi = 2.0L * pi;
  long double t = theta;
  while (t >= pi || t < -pi) {
    long double step = two_pi;
    while (std::fabs(t) >= 2.0L * step) step *= 2.0L;
    t += (t > 0.0L) ? -step : step;
  }
  return static_cast<double>(t);
}

// Circular difference |a - b| mod 2*pi, for seam-insensitive comparisons.
double circ_gap(double a, double b) {
  return std::fabs(std::remainder(a - b, kTwoPi));
}

TEST(Wrap, FixedPoints) {
  EXPECT_EQ(wrap(0.0).radians(), 0.0);
  EXPECT_EQ(wrap(1.0).radians(), 1.0);
  EXPECT_EQ(wrap(-3.0).radians(), -3.0);
  // The half-open convention sends +pi (and odd multiples) to -pi.
  EXPECT_EQ(wrap(kPi).radians(), -kPi);
  EXPECT_EQ(wrap(-kPi).radians(), -kPi);
  EXPECT_EQ(wrap(3.0 * kPi).radians(), -kPi);
  EXPECT_EQ(wrap(kTwoPi).radians(), 0.0);
  EXPECT_EQ(wrap(-kTwoPi).radians(), 0.0);
  // One full turn up from a value in (-3*pi, -pi); the shifted sum is exactly
  // representable here, so the remainder-based reduction reproduces it.
  EXPECT_DOUBLE_EQ(wrap(-7.5).radians(), -7.5 + kTwoPi);
}

TEST(Wrap, RangeInvariantAndCongruence) {
  std::mt19937_64 gen(202608);
  std::uniform_real_distribution<double> small(-40.0, 40.0);
  for (int i = 0; i < 5000; ++i) {
    const double theta = small(gen);
    const double w = wrap(theta).radians();
    ASSERT_GE(w, -kPi);
    ASSERT_LT(w, kPi);
    ASSERT_LE(circ_gap(w, wrap_oracle(theta)), 1e-13) << "theta=" << theta;
  }
}

TEST(Wrap, LargeMagnitudeAccuracy) {
  std::mt19937_64 gen(77);
  std::uniform_real_distribution<double> big(-1e6, 1e6);
  for (int i = 0; i < 2000; ++i) {
    const double theta = big(gen);
    const double w = wrap(theta).radians();
    ASSERT_GE(w, -kPi);
    ASSERT_LT(w, kPi);
    ASSERT_LE(circ_gap(w, wrap_oracle_ladder(theta)), 1e-9)
        << "theta=" << theta;
  }
}

TEST(Wrap, RejectsNonFinite) {
  EXPECT_THROW(wrap(std::numeric_limits<double>::quiet_NaN()),
               std::invalid_argument);
  EXPECT_THROW(wrap(std::numeric_limits<double>::infinity()),
               std::invalid_argument);
  EXPECT_THROW(wrap(-std::numeric_limits<double>::infinity()),
               std::invalid_argument);
}

TEST(Angle, DefaultAndEquality) {
  EXPECT_EQ(Angle().radians(), 0.0);
  EXPECT_TRUE(wrap(1.5) == wrap(1.5 + kTwoPi));
  EXPECT_TRUE(wrap(1.5) != wrap(-1.5));
}

TEST(Atan2Wrapped, AxisAndQuadrantTable) {
  EXPECT_EQ(atan2_wrapped(0.0, 1.0).radians(), 0.0);
  EXPECT_EQ(atan2_wrapped(1.0, 0.0).radians(), kPi / 2.0);
  EXPECT_EQ(atan2_wrapped(-1.0, 0.0).radians(), -kPi / 2.0);
  // Negative real axis maps to -pi under the half-open range convention;
  // std::atan2 would give +pi here.
  EXPECT_EQ(atan2_wrapped(0.0, -1.0).radians(), -kPi);
  EXPECT_EQ(atan2_wrapped(-0.0, -1.0).radians(), -kPi);

  EXPECT_DOUBLE_EQ(atan2_wrapped(1.0, 1.0).radians(), std::atan(1.0));
  EXPECT_DOUBLE_EQ(atan2_wrapped(1.0, -1.0).radians(), 3.0 * kPi / 4.0);
  EXPECT_DOUBLE_EQ(atan2_wrapped(-1.0, -1.0).radians(),
                   -2.356194490192344929);
  EXPECT_DOUBLE_EQ(atan2_wrapped(-1.0, 1.0).radians(), -std::atan(1.0));

  // Frozen reference directions (independent high-precision evaluation).
  EXPECT_NEAR(atan2_wrapped(0.157, -1.228).radians(), 3.01443233627495642,
              1e-15);
  EXPECT_NEAR(atan2_wrapped(1.0, -1.49).radians(), 2.55049886977988823, 1e-15);
}

TEST(Atan2Wrapped, OriginAndNaNRejected) {
  EXPECT_THROW(atan2_wrapped(0.0, 0.0), UndefinedDirectionError);
  EXPECT_THROW(atan2_wrapped(-0.0, 0.0), UndefinedDirectionError);
  EXPECT_THROW(atan2_wrapped(std::nan(""), 1.0), std::invalid_argument);
  EXPECT_THROW(atan2_wrapped(1.0, std::nan("")), std::invalid_argument);

  PlanePoint origin;
  EXPECT_TRUE(origin.is_origin());
  EXPECT_THROW(atan2_wrapped(origin), UndefinedDirectionError);
  EXPECT_FALSE((PlanePoint{0.0, -1.0}).is_origin());
  EXPECT_EQ(atan2_wrapped(PlanePoint{0.157, -1.228}),
            atan2_wrapped(0.157, -1.228));
}

TEST(Atan2Wrapped, PositiveScaleInvariance) {
  std::mt19937_64 gen(9);
  std::uniform_real_distribution<double> comp(-3.0, 3.0);
  const std::vector<double> scales = {1e-8, 0.25, 3.0, 1e7};
  for (int i = 0; i < 500; ++i) {
    double y = comp(gen);
    double x = comp(gen);
    if (y == 0.0 && x == 0.0) continue;
    const double base = atan2_wrapped(y, x).radians();
    for (double c : scales) {
      ASSERT_LE(circ_gap(atan2_wrapped(c * y, c * x).radians(), base), 1e-13)
          << "y=" << y << " x=" << x << " c=" << c;
    }
  }
}

TEST(Atan2Wrapped, RoundTripWithSinCos) {
  std::mt19937_64 gen(11);
  std::uniform_real_distribution<double> ang(-kPi, kPi);
  for (int i = 0; i < 2000; ++i) {
    const double theta = ang(gen);
    const double got = atan2_wrapped(std::sin(theta), std::cos(theta)).radians();
    ASSERT_LE(circ_gap(got, theta), 1e-13) << "theta=" << theta;
  }
  // The seam itself: sin(-pi) is a tiny negative number, cos(-pi) = -1, and
  // the recovered direction must stay at the -pi edge of the range.
  const double seam = atan2_wrapped(std::sin(-kPi), std::cos(-kPi)).radians();
  EXPECT_LE(circ_gap(seam, -kPi), 1e-13);
  EXPECT_LT(seam, kPi);
  EXPECT_GE(seam, -kPi);
}

TEST(CircDist, IdentityAntipodeAndRange) {
  EXPECT_EQ(circ_dist(wrap(0.7), wrap(0.7)), 0.0);
  EXPECT_EQ(circ_dist(wrap(-2.0), wrap(-2.0 + kTwoPi)), 0.0);
  EXPECT_NEAR(circ_dist(wrap(0.3), wrap(0.3 + kPi)), 2.0, 1e-12);
  EXPECT_NEAR(circ_dist(wrap(-kPi), wrap(0.0)), 2.0, 1e-12);
  EXPECT_DOUBLE_EQ(circ_dist(wrap(0.0), wrap(kPi / 2.0)), 1.0);

  std::mt19937_64 gen(4242);
  std::uniform_real_distribution<double> ang(-kPi, kPi);
  for (int i = 0; i < 2000; ++i) {
    const Angle a = wrap(ang(gen));
    const Angle b = wrap(ang(gen));
    const double d = circ_dist(a, b);
    ASSERT_GE(d, 0.0);
    ASSERT_LE(d, 2.0);
    ASSERT_DOUBLE_EQ(d, circ_dist(b, a));
  }
}

TEST(CircDist, HalfAngleChordFormula) {
  std::mt19937_64 gen(31337);
  std::uniform_real_distribution<double> ang(-kPi, kPi);
  for (int i = 0; i < 2000; ++i) {
    const Angle a = wrap(ang(gen));
    const Angle b = wrap(ang(gen));
    const double geodesic = circ_gap(a.radians(), b.radians());
    const double half_sin = std::sin(0.5 * geodesic);
    ASSERT_NEAR(circ_dist(a, b), 2.0 * half_sin * half_sin, 1e-14);
  }
}

TEST(CircDist, SqrtIsAMetric) {
  std::mt19937_64 gen(555);
  std::uniform_real_distribution<double> ang(-kPi, kPi);
  for (int i = 0; i < 3000; ++i) {
    const Angle a = wrap(ang(gen));
    const Angle b = wrap(ang(gen));
    const Angle c = wrap(ang(gen));
    const double ab = std::sqrt(circ_dist(a, b));
    const double bc = std::sqrt(circ_dist(b, c));
    const double ac = std::sqrt(circ_dist(a, c));
    ASSERT_LE(ac, ab + bc + 1e-12);
  }
}

}  // namespace
}  // namespace circreg
