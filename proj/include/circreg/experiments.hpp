#ifndef CIRCREG_EXPERIMENTS_HPP
#define CIRCREG_EXPERIMENTS_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <variant>
#include <vector>

#include "circreg/angle.hpp"
#include "circreg/circular.hpp"
#include "circreg/common.hpp"
#include "circreg/linear.hpp"
#include "circreg/noise.hpp"
#include "circreg/rng.hpp"

namespace circreg {

/// Which benchmark data-generating process a simulation uses.
enum class CovariateKind { Linear, Circular };

/// Benchmark simulation model.
///
/// linear_covariate(sigma):
///   m(x) = atan2(20x - 11, (10x - 5)^2 + 2), X ~ U[0, 1],
///   response noise von Mises(0, 10), covariate error Laplace(sigma).
/// circular_covariate(lambda):
///   m(x) = wrap(1/2 + cos(x + 3 sin x)), X ~ von Mises(0, 0.01),
///   response noise von Mises(0, 5), covariate error wrapped Laplace(lambda).
///
/// Observations: Theta_i = wrap(m(X_i) + zeta_i), Z_i = X_i + eps_i (wrapped
/// for the circular covariate). Draws are interleaved per observation
/// (X_i, zeta_i, eps_i) so runs sharing a seed share their prefix across
/// sample sizes and noise scales (common random numbers).
class SimulationModel {
 public:
  static SimulationModel linear_covariate(double sigma_eps);
  static SimulationModel circular_covariate(double lambda_eps);

  [[nodiscard]] CovariateKind kind() const noexcept { return kind_; }
  [[nodiscard]] double noise_scale() const noexcept { return noise_scale_; }
  [[nodiscard]] double response_concentration() const noexcept { return zeta_kappa_; }

  /// True regression direction at x (x in [0,1] for the linear model,
  /// radians for the circular one).
  [[nodiscard]] Angle regression(double x) const;

  /// Covariate-error model seen by the estimator.
  [[nodiscard]] LinearNoiseModel linear_noise() const;
  [[nodiscard]] CircularNoiseModel circular_noise() const;

 private:
  SimulationModel(CovariateKind kind, double noise_scale, double zeta_kappa)
      : kind_(kind), noise_scale_(noise_scale), zeta_kappa_(zeta_kappa) {}

  CovariateKind kind_;
  double noise_scale_;
  double zeta_kappa_;
};

/// Draws an n-observation dataset from the model using the given rng.
std::variant<LinearDataset, CircularDataset> simulate_dataset(const SimulationModel& model,
                                                              int n, SeededRng& rng);

/// Outcome of one Monte Carlo replication.
struct ReplicationOutcome {
  int replication = 0;      ///< stream id used for this replication
  bool failed = false;      ///< estimator raised (undefined direction / ill-posed)
  double error = 0.0;       ///< circular distance to the truth; 0 when failed
  double selected_sine = 0.0;    ///< level or bandwidth picked for the sine part
  double selected_cosine = 0.0;  ///< level or bandwidth picked for the cosine part
};

/// Monte Carlo risk summary at a single evaluation point.
struct RiskReport {
  double x = 0.0;
  int n = 0;
  int requested_reps = 0;
  int failures = 0;
  double mean_error = 0.0;      ///< mean circular distance over non-failed reps
  double std_error = 0.0;       ///< Monte Carlo standard error of that mean
  std::uint64_t seed = 0;
  std::vector<ReplicationOutcome> outcomes;  ///< by replication index
};

/// Runs `reps` independent replication tasks (stream id = 1..reps) across
/// `threads` workers and reduces them in replication order, so the result is
/// identical for every thread count. Replications where the worker throws
/// UndefinedDirectionError or IllPosedWeightError are recorded as failures
/// and excluded from the risk mean; if failures exceed 5% of reps the run
/// aborts with NumericalError. threads <= 0 means hardware concurrency.
RiskReport run_replications(int reps,
                            const std::function<ReplicationOutcome(int replication)>& task,
                            int threads);

/// Simulates and estimates `reps` times at covariate value x. Replication r
/// uses SeededRng(seed, r).
RiskReport run_monte_carlo(const SimulationModel& model, int n, double x, int reps,
                           const EstimatorConfig& config, std::uint64_t seed,
                           int threads = 0);

/// One tuning-constant grid point of a calibration sweep.
struct CalibrationPoint {
  double c0 = 0.0;
  double mean_error = 0.0;
  int failures = 0;
};

/// Risk-versus-c0 calibration curve with plateau marking. The plateau is the
/// longest suffix of the grid in which every window of 3 consecutive points
/// has relative spread (max - min)/max <= 20%; plateau_start is its first
/// index, or -1 when even the last window is unstable.
struct CalibrationCurve {
  std::vector<CalibrationPoint> points;  ///< ascending in c0
  int plateau_start = -1;

  [[nodiscard]] bool plateau_contains(double c0) const;
};

/// Sweeps the tuning constant over `grid` (applied to both trig components),
/// re-running the same seeded replications for every grid point (common
/// random numbers), and marks the plateau.
CalibrationCurve calibrate_c0(const SimulationModel& model, int n, double x, int reps,
                              const std::vector<double>& grid, std::uint64_t seed,
                              int threads = 0);

/// Calibration grids used for the benchmark models.
std::vector<double> default_calibration_grid(CovariateKind kind);

/// Signal-to-total variance ratio Var(X) / (Var(X) + Var(eps)) of a model.
double reliability_ratio(const SimulationModel& model);

/// Published reference fits for the shore-distance / movement-direction data,
/// evaluated at covariate value x (coefficients frozen from the original
/// analyses).
enum class BaselineCurve {
  FisherLee,       ///< link-function regression 1.693 + 2 atan(-0.0066 (x - 47.65))
  ProjectedLinear, ///< projected bivariate linear fit atan2(0.157 + 0.049x, -1.228 + 0.03x)
  TrigPolynomial,  ///< low-order trigonometric fit atan2(1 + 0.021x, -1.49 + 0.029x)
};
Angle baseline_curve(BaselineCurve which, double x);

/// Fitted curve point; `failed` marks evaluation points where the estimator
/// raised (curve output keeps the grid slot with the failure flagged).
struct CurvePoint {
  double x = 0.0;
  double direction = 0.0;
  double selected_sine = 0.0;
  double selected_cosine = 0.0;
  bool failed = false;
};

/// Evaluates the adaptive (or plug-in) estimator over an x grid.
std::vector<CurvePoint> estimate_curve(const LinearDataset& data,
                                       const LinearNoiseModel& noise,
                                       const std::vector<double>& xs,
                                       const EstimatorConfig& config);
std::vector<CurvePoint> estimate_curve(const CircularDataset& data,
                                       const CircularNoiseModel& noise,
                                       const std::vector<double>& xs,
                                       const EstimatorConfig& config);

}  // namespace circreg

#endif  // CIRCREG_EXPERIMENTS_HPP
