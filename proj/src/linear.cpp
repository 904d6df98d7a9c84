#include "circreg/linear.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>
#include <vector>

#include "circreg/errors.hpp"
#include "detail_quadrature.hpp"
#include "detail_sum.hpp"

namespace circreg {

namespace {

void require(bool ok, const char* message) {
  if (!ok) throw std::invalid_argument(message);
}

void check_bandwidth(double h) {
  require(std::isfinite(h) && h > 0.0 && h <= 1.0, "bandwidth must lie in (0, 1]");
}

void check_inputs(const LinearDataset& data, const TrigWeights& weights) {
  data.validate();
  require(weights.size() == data.size(), "weights were built for a different sample size");
}

/// sin(s)/s with a series branch for small |s|.
double stable_sinc(double s) {
  if (std::abs(s) < 1e-4) {
    const double s2 = s * s;
    return 1.0 - s2 / 6.0 + s2 * s2 / 120.0;
  }
  return std::sin(s) / s;
}

/// phi(s) = (s^2 sin s + 2 s cos s - 2 sin s) / s^3
///        = sum_{m>=0} (-1)^m s^{2m} / ((2m+3) (2m)!),
/// the normalized integral (1/T^3) int_0^T t^2 cos(t s / T) dt. The closed
/// form loses ~1/s^2 digits to cancellation, so small |s| uses the series.
double stable_phi(double s) {
  const double abs_s = std::abs(s);
  if (abs_s < 0.5) {
    double term = 1.0 / 3.0;
    double acc = term;
    const double s2 = s * s;
    for (int m = 1; m <= 12; ++m) {
      // term_m / term_{m-1} = -s^2 (2m+1) / ((2m+3)(2m)(2m-1))
      term *= -s2 * static_cast<double>(2 * m + 1) /
              static_cast<double>((2 * m + 3) * (2 * m) * (2 * m - 1));
      acc += term;
      if (std::abs(term) < 1e-18 * std::abs(acc)) break;
    }
    return acc;
  }
  return (s * s * std::sin(s) + 2.0 * s * std::cos(s) - 2.0 * std::sin(s)) /
         (s * s * s);
}

std::complex<double> checked_inverse_cf(const LinearNoiseModel& noise, double t) {
  const std::complex<double> value = noise.cf(t);
  if (std::abs(value) < std::numeric_limits<double>::min()) {
    throw IllPosedWeightError("linear noise characteristic function vanishes near frequency " +
                              std::to_string(t));
  }
  return 1.0 / value;
}

/// Quadrature fallback for the deconvolution weight:
/// (1/pi) int_0^T Re[e^{i t u} / cf(t)] dt.
double weight_by_quadrature(double u, double T, const LinearNoiseModel& noise) {
  const auto integrand = [&](double t) {
    const std::complex<double> inv = checked_inverse_cf(noise, t);
    return inv.real() * std::cos(t * u) - inv.imag() * std::sin(t * u);
  };
  // The u = 0 peak (1/(2 pi)) int |1/cf| >= T/pi sets the natural error scale;
  // relative accuracy at zero crossings of an oscillatory weight is not
  // meaningful, so the check uses that floor.
  return detail::integrate(integrand, 0.0, T, 1e-10, "deconvolution weight", T) / kPi;
}

}  // namespace

void LinearDataset::validate() const {
  if (theta.empty()) throw std::invalid_argument("linear dataset is empty");
  if (theta.size() != z.size()) {
    throw std::invalid_argument("linear dataset: response/covariate size mismatch");
  }
  for (double v : z) {
    if (!std::isfinite(v)) {
      throw std::invalid_argument("linear dataset: non-finite covariate");
    }
  }
}

double sinc_kernel(double y) { return stable_sinc(y) / kPi; }

double deconv_weight(double u, double h, const LinearNoiseModel& noise) {
  check_bandwidth(h);
  require(std::isfinite(u), "deconvolution weight: non-finite lag");
  const double T = 1.0 / h;
  const double s = T * u;
  switch (noise.kind()) {
    case LinearNoiseModel::Kind::None:
      return T * stable_sinc(s) / kPi;
    case LinearNoiseModel::Kind::Laplace: {
      // (1/pi) [ int_0^T cos(tu) dt + sigma^2 int_0^T t^2 cos(tu) dt ]
      const double sigma = noise.scale();
      return (T * stable_sinc(s) + sigma * sigma * T * T * T * stable_phi(s)) / kPi;
    }
    case LinearNoiseModel::Kind::Gaussian:
    case LinearNoiseModel::Kind::Custom:
      return weight_by_quadrature(u, T, noise);
  }
  return 0.0;  // unreachable
}

double weight_l1_norm(double h, const LinearNoiseModel& noise) {
  check_bandwidth(h);
  const double T = 1.0 / h;
  switch (noise.kind()) {
    case LinearNoiseModel::Kind::None:
      return 2.0 * T;
    case LinearNoiseModel::Kind::Laplace: {
      const double s2 = noise.scale() * noise.scale();
      return 2.0 * T + (2.0 / 3.0) * s2 * T * T * T;
    }
    case LinearNoiseModel::Kind::Gaussian:
    case LinearNoiseModel::Kind::Custom:
      break;
  }
  const auto integrand = [&](double t) { return std::abs(checked_inverse_cf(noise, t)); };
  return 2.0 * detail::integrate(integrand, 0.0, T, 1e-8, "weight L1 norm");
}

double weight_l2sq_norm(double h, const LinearNoiseModel& noise) {
  check_bandwidth(h);
  const double T = 1.0 / h;
  switch (noise.kind()) {
    case LinearNoiseModel::Kind::None:
      return 2.0 * T;
    case LinearNoiseModel::Kind::Laplace: {
      const double s2 = noise.scale() * noise.scale();
      const double T3 = T * T * T;
      return 2.0 * T + (4.0 / 3.0) * s2 * T3 + (2.0 / 5.0) * s2 * s2 * T3 * T * T;
    }
    case LinearNoiseModel::Kind::Gaussian:
    case LinearNoiseModel::Kind::Custom:
      break;
  }
  const auto integrand = [&](double t) { return std::norm(checked_inverse_cf(noise, t)); };
  return 2.0 * detail::integrate(integrand, 0.0, T, 1e-8, "weight L2 norm");
}

double projection_estimate_linear(const LinearDataset& data, const TrigWeights& weights,
                                  TrigComponent component, double h,
                                  const LinearNoiseModel& noise, double x) {
  check_inputs(data, weights);
  check_bandwidth(h);
  require(std::isfinite(x), "evaluation point must be finite");
  const std::size_t n = data.size();
  const auto& w = weights.component(component);
  std::vector<double> terms(n);
  for (std::size_t k = 0; k < n; ++k) {
    terms[k] = w[k] * deconv_weight(data.z[k] - x, h, noise);
  }
  return detail::pairwise_sum(std::span<const double>(terms)) / static_cast<double>(n);
}

double double_smooth_estimate(const LinearDataset& data, const TrigWeights& weights,
                              TrigComponent component, double h1, double h2,
                              const LinearNoiseModel& noise, double x) {
  check_bandwidth(h1);
  check_bandwidth(h2);
  // K_{h2} * q_hat_{h1} multiplies the spectra: indicator([-1/h1, 1/h1]) times
  // indicator([-1/h2, 1/h2]) is the indicator at max(h1, h2).
  return projection_estimate_linear(data, weights, component, std::max(h1, h2), noise, x);
}

double v0_linear(int n, double h, const LinearNoiseModel& noise) {
  require(n >= 1, "v0 requires a positive sample size");
  check_bandwidth(h);
  const double n1 = weight_l1_norm(h, noise);
  const double n2 = weight_l2sq_norm(h, noise);
  const double four_pi_sq = kTwoPi * kTwoPi;
  return std::min(n2 * noise.l1_norm(), n1 * n1) / (four_pi_sq * static_cast<double>(n));
}

BandwidthGrid bandwidth_grid(int n, const LinearNoiseModel& noise) {
  require(n >= 1, "bandwidth grid requires a positive sample size");
  const double threshold = std::log(static_cast<double>(n)) / static_cast<double>(n);
  BandwidthGrid grid;
  for (int k = 1; k <= n; ++k) {
    const double h = 1.0 / static_cast<double>(k);
    double n1 = 0.0;
    double n2 = 0.0;
    try {
      n1 = weight_l1_norm(h, noise);
      n2 = weight_l2sq_norm(h, noise);
    } catch (const NumericalError&) {
      break;  // norm evaluation overflowed double range; finer is only worse
    }
    if (!std::isfinite(n1) || !std::isfinite(n2)) break;  // finer only diverges further
    if (n2 / (n1 * n1) >= threshold) grid.bandwidths.push_back(h);
  }
  if (grid.bandwidths.empty()) {
    throw NumericalError("no admissible bandwidth: noise too severe for this sample size");
  }
  return grid;
}

LinearComponentSelection gl_select_bandwidth(const LinearDataset& data,
                                             const TrigWeights& weights,
                                             TrigComponent component,
                                             const LinearNoiseModel& noise, double x,
                                             double c0) {
  check_inputs(data, weights);
  require(std::isfinite(c0) && c0 > 0.0, "tuning constant c0 must be positive");
  const int n = static_cast<int>(data.size());

  LinearComponentSelection sel;
  sel.c0 = c0;
  sel.bandwidths = bandwidth_grid(n, noise).bandwidths;

  const double log_n = std::log(static_cast<double>(n));
  const std::size_t m = sel.bandwidths.size();
  sel.estimates.resize(m);
  sel.penalty.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    const double h = sel.bandwidths[i];
    sel.estimates[i] = projection_estimate_linear(data, weights, component, h, noise, x);
    sel.penalty[i] = std::sqrt(c0 * log_n * v0_linear(n, h, noise));
  }

  // A_i = sup over finer bandwidths (later grid entries) of the
  // penalty-shrunk deviation; coarser ones contribute exactly zero because
  // double smoothing collapses the pair.
  sel.comparison.assign(m, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    double a = 0.0;
    for (std::size_t j = i + 1; j < m; ++j) {
      a = std::max(a, std::abs(sel.estimates[i] - sel.estimates[j]) - sel.penalty[j]);
    }
    sel.comparison[i] = a;
  }

  std::size_t best = 0;
  double best_score = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < m; ++i) {
    const double score = sel.comparison[i] + sel.penalty[i];
    if (score < best_score) {  // strict: ties keep the largest bandwidth
      best_score = score;
      best = i;
    }
  }
  sel.selected_bandwidth = sel.bandwidths[best];
  sel.estimate = sel.estimates[best];
  return sel;
}

double plug_in_bandwidth(int n, double decay_rate, double decay_power) {
  require(n >= 1, "plug-in bandwidth requires a positive sample size");
  require(std::isfinite(decay_rate) && decay_rate > 0.0, "decay rate must be positive");
  require(std::isfinite(decay_power) && decay_power > 0.0, "decay power must be positive");
  if (n == 1) return 1.0;  // log(1) = 0: no smoothing information, coarsest bandwidth
  const double h =
      std::pow(std::log(static_cast<double>(n)) / (2.0 * decay_rate), -1.0 / decay_power);
  return std::min(h, 1.0);
}

LinearEstimate estimate_direction_linear(const LinearDataset& data,
                                         const LinearNoiseModel& noise, double x,
                                         const EstimatorConfig& config) {
  data.validate();
  require(std::isfinite(x), "evaluation point must be finite");
  const TrigWeights weights(data.theta);
  LinearEstimate result;

  if (config.mode == SelectionMode::Adaptive) {
    require(config.c0_sine > 0.0 && config.c0_cosine > 0.0,
            "adaptive mode requires positive c0 tuning constants");
    result.sine = gl_select_bandwidth(data, weights, TrigComponent::Sine, noise, x,
                                      config.c0_sine);
    result.cosine = gl_select_bandwidth(data, weights, TrigComponent::Cosine, noise, x,
                                        config.c0_cosine);
  } else {
    const auto& smooth = noise.smoothness();
    require(smooth.cls == SmoothnessClass::SuperSmooth,
            "plug-in mode requires a supersmooth noise model");
    const double h = plug_in_bandwidth(static_cast<int>(data.size()), smooth.decay_rate,
                                       smooth.decay_power);
    for (TrigComponent comp : {TrigComponent::Sine, TrigComponent::Cosine}) {
      LinearComponentSelection sel;
      sel.selected_bandwidth = h;
      sel.bandwidths = {h};
      sel.estimates = {projection_estimate_linear(data, weights, comp, h, noise, x)};
      sel.estimate = sel.estimates.front();
      sel.comparison = {0.0};
      sel.penalty = {0.0};
      (comp == TrigComponent::Sine ? result.sine : result.cosine) = std::move(sel);
    }
  }

  result.direction = atan2_wrapped(result.sine.estimate, result.cosine.estimate);
  return result;
}

}  // namespace circreg
