#include "circreg/bessel.hpp"

#include <boost/math/special_functions/bessel.hpp>
#include <cmath>
#include <stdexcept>

namespace circreg {

double bessel_ratio(double kappa) {
  if (!std::isfinite(kappa) || kappa < 0.0) {
    throw std::invalid_argument("bessel_ratio: kappa must be finite and nonnegative");
  }
  if (kappa == 0.0) return 0.0;
  if (kappa <= 500.0) {
    return boost::math::cyl_bessel_i(1, kappa) / boost::math::cyl_bessel_i(0, kappa);
  }
  // I1/I0 = 1 - 1/(2k) - 1/(8k^2) - 1/(8k^3) - 25/(128 k^4) + O(k^-5);
  // the first omitted term is ~1e-12 at kappa = 500.
  const double inv = 1.0 / kappa;
  return 1.0 - inv * (0.5 + inv * (0.125 + inv * (0.125 + inv * (25.0 / 128.0))));
}

}  // namespace circreg
