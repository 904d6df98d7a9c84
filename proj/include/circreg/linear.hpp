#ifndef CIRCREG_LINEAR_HPP
#define CIRCREG_LINEAR_HPP

#include <vector>

#include "circreg/angle.hpp"
#include "circreg/common.hpp"
#include "circreg/noise.hpp"

namespace circreg {

/// Sample of (response angle, contaminated real covariate) pairs.
struct LinearDataset {
  std::vector<Angle> theta;  ///< responses
  std::vector<double> z;     ///< covariates observed with additive error

  [[nodiscard]] std::size_t size() const noexcept { return theta.size(); }
  void validate() const;  ///< throws std::invalid_argument on size mismatch / empty / non-finite z
};

/// Sinc kernel K(y) = sin(y) / (pi y), K(0) = 1/pi. Fourier transform is the
/// indicator of [-1, 1], so the bandwidth-h kernel K_h(y) = K(y/h)/h has
/// transform supported on [-1/h, 1/h].
double sinc_kernel(double y);

/// Deconvolution weight at lag u for bandwidth h:
///   (2 pi)^-1 integral_{-1/h}^{1/h} e^{i t u} / cf(t) dt,
/// real by Hermitian symmetry. Closed forms for the no-noise and Laplace
/// models (stable small-u series branches), adaptive quadrature otherwise.
/// Requires h in (0, 1]. Throws IllPosedWeightError if cf vanishes on [0, 1/h].
double deconv_weight(double u, double h, const LinearNoiseModel& noise);

/// L1 norm of the weight spectrum, integral_{-1/h}^{1/h} 1/|cf(t)| dt.
double weight_l1_norm(double h, const LinearNoiseModel& noise);

/// Squared L2 norm of the weight spectrum, integral_{-1/h}^{1/h} 1/|cf(t)|^2 dt.
double weight_l2sq_norm(double h, const LinearNoiseModel& noise);

/// Kernel deconvolution estimate of the weighted regression numerator
/// q_w(x) = E[w(Theta) | X = x] * density(x):
///   q_hat_h(x) = n^-1 sum_k w_k * deconv_weight(z_k - x, h).
/// Pairwise summation over observations.
double projection_estimate_linear(const LinearDataset& data, const TrigWeights& weights,
                                  TrigComponent component, double h,
                                  const LinearNoiseModel& noise, double x);

/// Doubly smoothed estimate (K_{h2} convolved with q_hat_{h1}). With the sinc
/// kernel the spectral supports nest, so this equals the single-bandwidth
/// estimate at max(h1, h2); symmetric in (h1, h2).
double double_smooth_estimate(const LinearDataset& data, const TrigWeights& weights,
                              TrigComponent component, double h1, double h2,
                              const LinearNoiseModel& noise, double x);

/// Variance majorant for the bandwidth-h estimate:
///   (2 pi)^-2 n^-1 * min{ weight_l2sq_norm(h) * l1_norm(cf),
///                         weight_l1_norm(h)^2 }.
/// The no-noise model has an infinite cf L1 norm and always takes the second
/// branch, (2/h)^2. Monotone nonincreasing in h. Requires n >= 1, h in (0, 1].
double v0_linear(int n, double h, const LinearNoiseModel& noise);

/// Admissible bandwidths for adaptive selection, descending:
///   { 1/k : k in {1..n},
///     weight_l2sq_norm(1/k) >= (log n / n) * weight_l1_norm(1/k)^2 }.
/// h = 1 always qualifies (Cauchy-Schwarz gives ratio >= 1/2 there).
struct BandwidthGrid {
  std::vector<double> bandwidths;
};
BandwidthGrid bandwidth_grid(int n, const LinearNoiseModel& noise);

/// Per-component outcome of the adaptive bandwidth selection.
struct LinearComponentSelection {
  double selected_bandwidth = 0.0;
  double estimate = 0.0;             ///< estimate at selected_bandwidth
  double c0 = 0.0;                   ///< tuning constant used
  std::vector<double> bandwidths;    ///< candidate grid, descending
  std::vector<double> estimates;     ///< estimate per candidate
  std::vector<double> comparison;    ///< sup-deviation term A per candidate
  std::vector<double> penalty;       ///< sqrt(c0 log(n) V0) per candidate
};

/// Data-driven bandwidth choice: minimize A(h, x) + sqrt(c0 log(n) V0(n, h))
/// over the admissible grid, where
///   A(h, x) = max_{h' in grid} ( |q_hat_{h,h'}(x) - q_hat_{h'}(x)|
///                                - sqrt(c0 log(n) V0(n, h')) )_+
/// and q_hat_{h,h'} is the doubly smoothed estimate. Only h' < h contributes
/// (spectral nesting kills the rest). Ties pick the largest bandwidth.
/// Requires c0 > 0.
LinearComponentSelection gl_select_bandwidth(const LinearDataset& data,
                                             const TrigWeights& weights,
                                             TrigComponent component,
                                             const LinearNoiseModel& noise, double x,
                                             double c0);

/// Plug-in bandwidth for supersmooth noise with |cf(t)| ~ exp(-rate * |t|^power):
///   (log n / (2 * rate))^(-1/power), clamped into (0, 1].
/// Requires n >= 1, rate > 0, power > 0.
double plug_in_bandwidth(int n, double decay_rate, double decay_power);

/// Full linear-covariate regression estimate at x.
struct LinearEstimate {
  Angle direction;
  LinearComponentSelection sine;
  LinearComponentSelection cosine;
};

/// Estimates the regression direction m(x) by selecting a bandwidth per trig
/// component (adaptively or by plug-in, per config) and combining the two
/// estimates through the wrapped atan2.
/// Throws UndefinedDirectionError when both component estimates are exactly 0.
LinearEstimate estimate_direction_linear(const LinearDataset& data,
                                         const LinearNoiseModel& noise, double x,
                                         const EstimatorConfig& config);

}  // namespace circreg

#endif  // CIRCREG_LINEAR_HPP
