#ifndef CIRCREG_ERRORS_HPP
#define CIRCREG_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace circreg {

/// Thrown when a direction is requested for the origin (0, 0): both trig
/// component estimates vanished, so the angle is undefined.
class UndefinedDirectionError : public std::domain_error {
 public:
  explicit UndefinedDirectionError(const std::string& what)
      : std::domain_error(what) {}
};

/// Thrown when a deconvolution weight cannot be formed because the noise
/// characteristic function vanishes (or underflows) on the required range.
class IllPosedWeightError : public std::domain_error {
 public:
  explicit IllPosedWeightError(const std::string& what)
      : std::domain_error(what) {}
};

/// Thrown on malformed or unusable input data (files, CSV rows, ranges).
class DataError : public std::runtime_error {
 public:
  explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

/// Thrown when a numeric routine cannot reach its accuracy contract
/// (quadrature non-convergence, series blow-up, empty admissible grid).
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace circreg

#endif  // CIRCREG_ERRORS_HPP
