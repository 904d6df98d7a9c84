#ifndef CIRCREG_CIRCULAR_HPP
#define CIRCREG_CIRCULAR_HPP

#include <vector>

#include "circreg/angle.hpp"
#include "circreg/common.hpp"
#include "circreg/noise.hpp"

namespace circreg {

/// Sample of (response angle, contaminated circular covariate) pairs.
struct CircularDataset {
  std::vector<Angle> theta;  ///< responses
  std::vector<Angle> z;      ///< covariates observed with circular error

  [[nodiscard]] std::size_t size() const noexcept { return theta.size(); }
  void validate() const;  ///< throws std::invalid_argument on size mismatch / empty
};

/// Trigonometric orthogonal-series estimate of the weighted regression
/// numerator q_w(x) = E[w(Theta) | X = x] * density(x), deconvolved for the
/// covariate error:
///
///   q_hat(x) = sum_{|l| <= level} (2 pi n)^-1 sum_j w_j e^{i l z_j} / cf(l) e^{-i l x}.
///
/// The sum is mathematically real (Hermitian symmetry in l); the imaginary
/// residual is asserted to be <= 1e-10 * (1 + |result|) in debug builds and
/// discarded. Summation over observations is pairwise to bound rounding.
/// Throws IllPosedWeightError if cf vanishes at some |l| <= level.
double projection_estimate(const CircularDataset& data, const TrigWeights& weights,
                           TrigComponent component, int level,
                           const CircularNoiseModel& noise, Angle x);

/// Variance majorant for the level-`level` projection estimate:
///   (2 pi)^-2 n^-1 * min{ (sum_{|l|<=level} 1/|cf(l)|)^2,
///                         ell1(cf) * sum_{|l|<=2*level} 1/|cf(l)|^2 }.
/// Monotone nondecreasing in the level. Requires n >= 1, level >= 1.
double v0_circular(int n, int level, const CircularNoiseModel& noise);

/// Admissible levels for adaptive selection, ascending:
///   { L in {1..n} : sum_{|l|<=2L} 1/|cf(l)|^2 >= (log n / n) * (sum_{|l|<=L} 1/|cf(l)|)^2 }.
/// Nonempty for every n >= 1 under the built-in models (level 1 qualifies).
/// Levels whose admissibility ratio overflows are dropped.
struct LevelGrid {
  std::vector<int> levels;
};
LevelGrid level_grid(int n, const CircularNoiseModel& noise);

/// Per-component outcome of the adaptive level selection, with the full
/// comparison table retained for diagnostics.
struct CircularComponentSelection {
  int selected_level = 0;
  double estimate = 0.0;             ///< projection estimate at selected_level
  double c0 = 0.0;                   ///< tuning constant used
  std::vector<int> levels;           ///< candidate grid, ascending
  std::vector<double> estimates;     ///< projection estimate per candidate
  std::vector<double> comparison;    ///< sup-deviation term A per candidate
  std::vector<double> penalty;       ///< sqrt(c0 log(n) V0) per candidate
};

/// Data-driven level choice: minimize A(L, x) + sqrt(c0 log(n) V0(n, L)) over
/// the admissible grid, where
///   A(L, x) = max_{L' in grid} ( |q_hat_{L'}(x) - q_hat_{min(L, L')}(x)|
///                                - sqrt(c0 log(n) V0(n, L')) )_+ .
/// Only L' > L contributes (the difference vanishes otherwise). Ties pick the
/// smallest level. Requires c0 > 0.
CircularComponentSelection gl_select_level(const CircularDataset& data,
                                           const TrigWeights& weights,
                                           TrigComponent component,
                                           const CircularNoiseModel& noise, Angle x,
                                           double c0);

/// Plug-in level for supersmooth noise with |cf(l)| ~ exp(-rate * l^power):
///   max(1, round((log n / (2 * rate))^(1/power))).
/// Requires n >= 1, rate > 0, power > 0.
int plug_in_level(int n, double decay_rate, double decay_power);

/// Full circular-covariate regression estimate at x.
struct CircularEstimate {
  Angle direction;                      ///< atan2 of the two component estimates
  CircularComponentSelection sine;      ///< numerator component diagnostics
  CircularComponentSelection cosine;    ///< denominator component diagnostics
};

/// Estimates the regression direction m(x) by selecting a level per trig
/// component (adaptively or by plug-in, per config) and combining the two
/// projection estimates through the wrapped atan2.
/// Throws UndefinedDirectionError when both component estimates are exactly 0.
CircularEstimate estimate_direction_circular(const CircularDataset& data,
                                             const CircularNoiseModel& noise, Angle x,
                                             const EstimatorConfig& config);

}  // namespace circreg

#endif  // CIRCREG_CIRCULAR_HPP
