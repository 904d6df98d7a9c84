#ifndef CIRCREG_BESSEL_HPP
#define CIRCREG_BESSEL_HPP

namespace circreg {

/// Ratio I1(kappa) / I0(kappa) of modified Bessel functions, the mean
/// resultant length of a von Mises distribution with concentration kappa.
///
/// Requires kappa >= 0. Absolute error <= 1e-10: direct Bessel evaluation up
/// to kappa = 500, asymptotic ratio expansion beyond (where direct I0/I1
/// would overflow long before the ratio stops being representable).
double bessel_ratio(double kappa);

}  // namespace circreg

#endif  // CIRCREG_BESSEL_HPP
