#ifndef CIRCREG_SRC_DETAIL_QUADRATURE_HPP
#define CIRCREG_SRC_DETAIL_QUADRATURE_HPP

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <string>

#include "circreg/errors.hpp"

namespace circreg::detail {

/// Adaptive Gauss-Kronrod integration with a relative-tolerance contract.
///
/// `scale_floor` widens the acceptance scale for integrals whose value sits
/// near a zero crossing of an oscillatory integrand (relative accuracy at
/// the zero itself is not attainable or needed there). Throws NumericalError
/// when the error estimate misses the target.
template <class F>
double integrate(const F& f, double a, double b, double rel_tol,
                 const char* context, double scale_floor = 0.0,
                 unsigned max_depth = 18) {
  double error = 0.0;
  const double value = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
      f, a, b, max_depth, rel_tol, &error);
  const double scale = std::max({std::abs(value), scale_floor, 1e-300});
  if (!std::isfinite(value) || error > 16.0 * rel_tol * scale) {
    throw NumericalError(std::string("quadrature did not converge in ") + context);
  }
  return value;
}

}  // namespace circreg::detail

#endif  // CIRCREG_SRC_DETAIL_QUADRATURE_HPP
