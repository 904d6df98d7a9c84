#ifndef CIRCREG_NOISE_HPP
#define CIRCREG_NOISE_HPP

#include <complex>
#include <functional>
#include <string>
#include <string_view>

namespace circreg {

/// Decay regime of a noise characteristic function.
enum class SmoothnessClass {
  OrdinarySmooth,  ///< polynomial decay, |cf| ~ |t|^-order
  SuperSmooth,     ///< exponential decay, |cf| ~ exp(-decay_rate * |t|^decay_power)
};

/// Smoothness declaration attached to a noise model. For OrdinarySmooth only
/// `order` is meaningful; for SuperSmooth, `decay_rate` and `decay_power`
/// (the (rate, power) pair of exp(-rate * |t|^power)) drive the plug-in
/// smoothing formulas.
struct NoiseSmoothness {
  SmoothnessClass cls = SmoothnessClass::OrdinarySmooth;
  double order = 0.0;
  double decay_rate = 0.0;
  double decay_power = 0.0;
};

/// Distribution of the measurement error on a circular covariate, described
/// through its characteristic function at integer frequencies.
///
/// cf(-l) = conj(cf(l)) by construction, cf(0) = 1, |cf(l)| <= 1. Custom
/// ordinary-smooth models must declare order > 1 so the ell-1 norm is finite.
/// The no-noise sentinel has cf identically 1; its ell-1 norm is taken as 1
/// by convention so variance majorants stay finite over truncated grids.
class CircularNoiseModel {
 public:
  using CfFn = std::function<std::complex<double>(long)>;
  enum class Kind { None, WrappedLaplace, Custom };

  /// Error-free covariates (cf = 1 at every frequency).
  static CircularNoiseModel none();

  /// Wrapped Laplace error with rate lambda > 0: cf(l) = lambda^2 / (l^2 + lambda^2).
  /// Ordinary smooth of order 2.
  static CircularNoiseModel wrapped_laplace(double lambda);

  /// User characteristic function with polynomial decay of the given order (> 1).
  /// `cf` is only evaluated at l >= 0; negative frequencies use conjugation.
  static CircularNoiseModel custom_ordinary(double order, CfFn cf);

  /// User characteristic function with exponential decay
  /// exp(-decay_rate * l^decay_power), decay_rate > 0, decay_power > 0.
  static CircularNoiseModel custom_super(double decay_rate, double decay_power, CfFn cf);

  /// Characteristic function at integer frequency l (Hermitian in l).
  [[nodiscard]] std::complex<double> cf(long l) const;
  [[nodiscard]] double cf_abs(long l) const;

  /// sum over integer l of |cf(l)|. Exact closed form for wrapped Laplace,
  /// partial sums for custom models, 1 by convention for none().
  [[nodiscard]] double ell1_norm() const { return ell1_; }

  [[nodiscard]] const NoiseSmoothness& smoothness() const noexcept { return smoothness_; }
  [[nodiscard]] bool is_none() const noexcept { return kind_ == Kind::None; }
  [[nodiscard]] Kind kind() const noexcept { return kind_; }
  [[nodiscard]] double rate() const noexcept { return lambda_; }

  /// Round-trippable description, e.g. "wrapped_laplace:2.54" or "none".
  [[nodiscard]] std::string spec_string() const;

 private:
  CircularNoiseModel() = default;

  Kind kind_ = Kind::None;
  double lambda_ = 0.0;
  CfFn custom_;
  NoiseSmoothness smoothness_;
  double ell1_ = 1.0;
};

/// Distribution of the measurement error on a real-line covariate, described
/// through its characteristic function.
///
/// cf(-t) = conj(cf(t)), cf(0) = 1, |cf(t)| <= 1. Custom ordinary-smooth
/// models must declare order > 1 so the L1 norm is finite. The no-noise
/// sentinel has cf identically 1 and reports an infinite L1 norm, which
/// steers the variance majorant onto its norm-free branch.
class LinearNoiseModel {
 public:
  using CfFn = std::function<std::complex<double>(double)>;
  enum class Kind { None, Laplace, Gaussian, Custom };

  static LinearNoiseModel none();

  /// Laplace error with scale sigma > 0 (density exp(-|x|/sigma)/(2 sigma)):
  /// cf(t) = 1 / (1 + sigma^2 t^2), ordinary smooth of order 2.
  static LinearNoiseModel laplace(double sigma);

  /// Centered Gaussian error with standard deviation sigma > 0:
  /// cf(t) = exp(-sigma^2 t^2 / 2), supersmooth with rate sigma^2/2, power 2.
  static LinearNoiseModel gaussian(double sigma);

  static LinearNoiseModel custom_ordinary(double order, CfFn cf);
  static LinearNoiseModel custom_super(double decay_rate, double decay_power, CfFn cf);

  [[nodiscard]] std::complex<double> cf(double t) const;
  [[nodiscard]] double cf_abs(double t) const;

  /// integral over the line of |cf|; +infinity for none().
  [[nodiscard]] double l1_norm() const { return l1_; }

  [[nodiscard]] const NoiseSmoothness& smoothness() const noexcept { return smoothness_; }
  [[nodiscard]] bool is_none() const noexcept { return kind_ == Kind::None; }
  [[nodiscard]] Kind kind() const noexcept { return kind_; }
  [[nodiscard]] double scale() const noexcept { return scale_; }

  [[nodiscard]] std::string spec_string() const;

 private:
  LinearNoiseModel() = default;

  Kind kind_ = Kind::None;
  double scale_ = 0.0;
  CfFn custom_;
  NoiseSmoothness smoothness_;
  double l1_ = 0.0;
};

/// Parses "wrapped_laplace:<lambda>" or "none". Throws std::invalid_argument
/// on anything else.
CircularNoiseModel parse_circular_noise(std::string_view spec);

/// Parses "laplace:<sigma>", "gaussian:<sigma>" or "none". Throws
/// std::invalid_argument on anything else.
LinearNoiseModel parse_linear_noise(std::string_view spec);

}  // namespace circreg

#endif  // CIRCREG_NOISE_HPP
