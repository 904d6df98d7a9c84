#include "circreg/circular.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>
#include <vector>

#include "circreg/errors.hpp"
#include "detail_sum.hpp"

namespace circreg {

namespace {

using Complex = std::complex<double>;

void require(bool ok, const char* message) {
  if (!ok) throw std::invalid_argument(message);
}

/// 1/cf(l) for l = 0..max_frequency. Vanishing (or denormal) cf values make
/// the inversion meaningless and raise IllPosedWeightError.
std::vector<Complex> inverse_cf_table(const CircularNoiseModel& noise, int max_frequency) {
  std::vector<Complex> inv(static_cast<std::size_t>(max_frequency) + 1);
  for (int l = 0; l <= max_frequency; ++l) {
    const Complex value = noise.cf(l);
    if (std::abs(value) < std::numeric_limits<double>::min()) {
      throw IllPosedWeightError("circular noise characteristic function vanishes at frequency " +
                                std::to_string(l));
    }
    inv[static_cast<std::size_t>(l)] = 1.0 / value;
  }
  return inv;
}

void check_inputs(const CircularDataset& data, const TrigWeights& weights) {
  data.validate();
  require(weights.size() == data.size(), "weights were built for a different sample size");
}

/// Projection estimates at x for every level in `levels` (ascending) in one
/// O(n * max level) pass: per-frequency empirical sums are pairwise-reduced
/// over observations, then accumulated over frequencies.
std::vector<double> projection_over_levels(const CircularDataset& data,
                                           const TrigWeights& weights,
                                           TrigComponent component,
                                           const std::vector<int>& levels,
                                           const CircularNoiseModel& noise, Angle x) {
  const std::size_t n = data.size();
  const int max_level = levels.back();
  const auto inv = inverse_cf_table(noise, max_level);
  const auto& w = weights.component(component);

  std::vector<Complex> base(n);
  std::vector<Complex> cur(n, Complex(1.0, 0.0));
  std::vector<Complex> terms(n);
  for (std::size_t j = 0; j < n; ++j) {
    base[j] = std::polar(1.0, data.z[j].radians() - x.radians());
    terms[j] = w[j];
  }
  const double scale = 1.0 / (kTwoPi * static_cast<double>(n));

  Complex running = detail::pairwise_sum(std::span<const Complex>(terms)) * inv[0];
  std::vector<double> out(levels.size());
  std::size_t next = 0;
  for (int l = 0; l <= max_level; ++l) {
    if (l > 0) {
      for (std::size_t j = 0; j < n; ++j) {
        cur[j] *= base[j];
        terms[j] = w[j] * cur[j];
      }
      const Complex u = detail::pairwise_sum(std::span<const Complex>(terms));
      const Complex z = u * inv[static_cast<std::size_t>(l)];
      running += z + std::conj(z);
    }
    while (next < levels.size() && levels[next] == l) {
      out[next] = running.real() * scale;
      ++next;
    }
  }
  return out;
}

/// Prefix sums over the inverse cf magnitudes:
///   s1[L] = sum_{|l| <= L} 1/|cf(l)|,   s2[M] = sum_{|l| <= M} 1/|cf(l)|^2.
struct CfPrefixSums {
  std::vector<double> s1;  ///< indexed by level, up to max_level
  std::vector<double> s2;  ///< indexed by frequency bound, up to 2*max_level
};

CfPrefixSums cf_prefix_sums(const CircularNoiseModel& noise, int max_level) {
  CfPrefixSums p;
  p.s1.resize(static_cast<std::size_t>(max_level) + 1);
  p.s2.resize(static_cast<std::size_t>(2 * max_level) + 1);
  p.s1[0] = 1.0;  // cf(0) = 1
  p.s2[0] = 1.0;
  for (int l = 1; l <= 2 * max_level; ++l) {
    const double a = noise.cf_abs(l);
    const double inv = (a > 0.0) ? 1.0 / a : std::numeric_limits<double>::infinity();
    if (l <= max_level) p.s1[static_cast<std::size_t>(l)] = p.s1[l - 1] + 2.0 * inv;
    p.s2[static_cast<std::size_t>(l)] = p.s2[l - 1] + 2.0 * inv * inv;
  }
  return p;
}

double v0_from_sums(int n, double s1, double s2, double ell1) {
  const double four_pi_sq = kTwoPi * kTwoPi;
  return std::min(s1 * s1, ell1 * s2) / (four_pi_sq * static_cast<double>(n));
}

}  // namespace

void CircularDataset::validate() const {
  if (theta.empty()) throw std::invalid_argument("circular dataset is empty");
  if (theta.size() != z.size()) {
    throw std::invalid_argument("circular dataset: response/covariate size mismatch");
  }
}

double projection_estimate(const CircularDataset& data, const TrigWeights& weights,
                           TrigComponent component, int level,
                           const CircularNoiseModel& noise, Angle x) {
  check_inputs(data, weights);
  require(level >= 0, "projection level must be nonnegative");
  const std::size_t n = data.size();
  const auto inv = inverse_cf_table(noise, level);
  const auto& w = weights.component(component);

  // T_j = w_j * sum_{|l| <= level} e^{i l (z_j - x)} / cf(l), then the
  // pairwise-summed mean over observations. Hermitian symmetry of cf makes
  // the total mathematically real.
  std::vector<Complex> terms(n);
  for (std::size_t j = 0; j < n; ++j) {
    const Complex base = std::polar(1.0, data.z[j].radians() - x.radians());
    Complex inner = inv[0];
    Complex cur(1.0, 0.0);
    for (int l = 1; l <= level; ++l) {
      cur *= base;
      const Complex z = cur * inv[static_cast<std::size_t>(l)];
      inner += z;
      inner += std::conj(z);
    }
    terms[j] = w[j] * inner;
  }
  const Complex total = detail::pairwise_sum(std::span<const Complex>(terms));
  const double value = total.real() / (kTwoPi * static_cast<double>(n));
  assert(std::abs(total.imag() / (kTwoPi * static_cast<double>(n))) <=
         1e-10 * (1.0 + std::abs(value)));
  return value;
}

double v0_circular(int n, int level, const CircularNoiseModel& noise) {
  require(n >= 1, "v0 requires a positive sample size");
  require(level >= 1, "v0 requires level >= 1");
  double s1 = 1.0;
  double s2 = 1.0;
  for (int l = 1; l <= 2 * level; ++l) {
    const double a = noise.cf_abs(l);
    const double inv = (a > 0.0) ? 1.0 / a : std::numeric_limits<double>::infinity();
    if (l <= level) s1 += 2.0 * inv;
    s2 += 2.0 * inv * inv;
  }
  return v0_from_sums(n, s1, s2, noise.ell1_norm());
}

LevelGrid level_grid(int n, const CircularNoiseModel& noise) {
  require(n >= 1, "level grid requires a positive sample size");
  const double threshold = std::log(static_cast<double>(n)) / static_cast<double>(n);
  const auto prefix = cf_prefix_sums(noise, n);
  LevelGrid grid;
  for (int level = 1; level <= n; ++level) {
    const double s1 = prefix.s1[static_cast<std::size_t>(level)];
    const double s2 = prefix.s2[static_cast<std::size_t>(2 * level)];
    if (!std::isfinite(s1)) break;  // deeper levels only get worse
    const double ratio = s2 / (s1 * s1);
    if (std::isnan(ratio)) continue;
    if (ratio >= threshold) grid.levels.push_back(level);
  }
  if (grid.levels.empty()) {
    throw NumericalError("no admissible level: noise too severe for this sample size");
  }
  return grid;
}

CircularComponentSelection gl_select_level(const CircularDataset& data,
                                           const TrigWeights& weights,
                                           TrigComponent component,
                                           const CircularNoiseModel& noise, Angle x,
                                           double c0) {
  check_inputs(data, weights);
  require(std::isfinite(c0) && c0 > 0.0, "tuning constant c0 must be positive");
  const int n = static_cast<int>(data.size());

  CircularComponentSelection sel;
  sel.c0 = c0;
  sel.levels = level_grid(n, noise).levels;
  sel.estimates = projection_over_levels(data, weights, component, sel.levels, noise, x);

  const double log_n = std::log(static_cast<double>(n));
  const auto prefix = cf_prefix_sums(noise, sel.levels.back());
  const double ell1 = noise.ell1_norm();
  sel.penalty.resize(sel.levels.size());
  for (std::size_t i = 0; i < sel.levels.size(); ++i) {
    const int level = sel.levels[i];
    const double v0 = v0_from_sums(n, prefix.s1[static_cast<std::size_t>(level)],
                                   prefix.s2[static_cast<std::size_t>(2 * level)], ell1);
    sel.penalty[i] = std::sqrt(c0 * log_n * v0);
  }

  // A_i = sup over finer levels of the penalty-shrunk deviation; coarser
  // levels contribute exactly zero because min(L, L') collapses the pair.
  sel.comparison.assign(sel.levels.size(), 0.0);
  for (std::size_t i = 0; i < sel.levels.size(); ++i) {
    double a = 0.0;
    for (std::size_t j = i + 1; j < sel.levels.size(); ++j) {
      a = std::max(a, std::abs(sel.estimates[j] - sel.estimates[i]) - sel.penalty[j]);
    }
    sel.comparison[i] = a;
  }

  std::size_t best = 0;
  double best_score = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < sel.levels.size(); ++i) {
    const double score = sel.comparison[i] + sel.penalty[i];
    if (score < best_score) {  // strict: ties keep the smallest level
      best_score = score;
      best = i;
    }
  }
  sel.selected_level = sel.levels[best];
  sel.estimate = sel.estimates[best];
  return sel;
}

int plug_in_level(int n, double decay_rate, double decay_power) {
  require(n >= 1, "plug-in level requires a positive sample size");
  require(std::isfinite(decay_rate) && decay_rate > 0.0, "decay rate must be positive");
  require(std::isfinite(decay_power) && decay_power > 0.0, "decay power must be positive");
  const double value =
      std::pow(std::log(static_cast<double>(n)) / (2.0 * decay_rate), 1.0 / decay_power);
  return std::max(1L, std::lround(value));
}

CircularEstimate estimate_direction_circular(const CircularDataset& data,
                                             const CircularNoiseModel& noise, Angle x,
                                             const EstimatorConfig& config) {
  data.validate();
  const TrigWeights weights(data.theta);
  CircularEstimate result;

  if (config.mode == SelectionMode::Adaptive) {
    require(config.c0_sine > 0.0 && config.c0_cosine > 0.0,
            "adaptive mode requires positive c0 tuning constants");
    result.sine = gl_select_level(data, weights, TrigComponent::Sine, noise, x,
                                  config.c0_sine);
    result.cosine = gl_select_level(data, weights, TrigComponent::Cosine, noise, x,
                                    config.c0_cosine);
  } else {
    const auto& smooth = noise.smoothness();
    require(smooth.cls == SmoothnessClass::SuperSmooth,
            "plug-in mode requires a supersmooth noise model");
    const int level =
        plug_in_level(static_cast<int>(data.size()), smooth.decay_rate, smooth.decay_power);
    for (TrigComponent comp : {TrigComponent::Sine, TrigComponent::Cosine}) {
      CircularComponentSelection sel;
      sel.selected_level = level;
      sel.levels = {level};
      sel.estimates = {projection_estimate(data, weights, comp, level, noise, x)};
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
