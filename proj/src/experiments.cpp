#include "circreg/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "circreg/bessel.hpp"
#include "circreg/errors.hpp"

namespace circreg {

namespace {

void require(bool ok, const char* message) {
  if (!ok) throw std::invalid_argument(message);
}

constexpr double kLinearResponseKappa = 10.0;
constexpr double kCircularResponseKappa = 5.0;
constexpr double kCircularDesignKappa = 0.01;
constexpr double kMaxFailureFraction = 0.05;

}  // namespace

SimulationModel SimulationModel::linear_covariate(double sigma_eps) {
  require(std::isfinite(sigma_eps) && sigma_eps >= 0.0,
          "linear model: sigma_eps must be nonnegative");
  return SimulationModel(CovariateKind::Linear, sigma_eps, kLinearResponseKappa);
}

SimulationModel SimulationModel::circular_covariate(double lambda_eps) {
  require(std::isfinite(lambda_eps) && lambda_eps >= 0.0,
          "circular model: lambda_eps must be nonnegative");
  return SimulationModel(CovariateKind::Circular, lambda_eps, kCircularResponseKappa);
}

Angle SimulationModel::regression(double x) const {
  if (kind_ == CovariateKind::Linear) {
    const double bump = 10.0 * x - 5.0;
    return atan2_wrapped(20.0 * x - 11.0, bump * bump + 2.0);
  }
  return Angle::wrap(0.5 + std::cos(x + 3.0 * std::sin(x)));
}

LinearNoiseModel SimulationModel::linear_noise() const {
  require(kind_ == CovariateKind::Linear, "linear noise of a circular-covariate model");
  return noise_scale_ > 0.0 ? LinearNoiseModel::laplace(noise_scale_)
                            : LinearNoiseModel::none();
}

CircularNoiseModel SimulationModel::circular_noise() const {
  require(kind_ == CovariateKind::Circular, "circular noise of a linear-covariate model");
  return noise_scale_ > 0.0 ? CircularNoiseModel::wrapped_laplace(noise_scale_)
                            : CircularNoiseModel::none();
}

std::variant<LinearDataset, CircularDataset> simulate_dataset(const SimulationModel& model,
                                                              int n, SeededRng& rng) {
  require(n >= 1, "simulate_dataset: sample size must be positive");
  VonMisesSampler response_noise(Angle(), model.response_concentration());
  // Per-observation draw order is (X_i, zeta_i, eps_i) so runs sharing a seed
  // share their prefix across sample sizes and noise scales.
  if (model.kind() == CovariateKind::Linear) {
    LinearDataset data;
    data.theta.reserve(static_cast<std::size_t>(n));
    data.z.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
      const double x = rng.uniform01();
      const Angle zeta = response_noise.draw(rng);
      const double eps =
          model.noise_scale() > 0.0 ? rng.laplace(model.noise_scale()) : 0.0;
      data.theta.push_back(Angle::wrap(model.regression(x).radians() + zeta.radians()));
      data.z.push_back(x + eps);
    }
    return data;
  }
  VonMisesSampler design(Angle(), kCircularDesignKappa);
  CircularDataset data;
  data.theta.reserve(static_cast<std::size_t>(n));
  data.z.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const Angle x = design.draw(rng);
    const Angle zeta = response_noise.draw(rng);
    const Angle eps = model.noise_scale() > 0.0
                          ? sample_wrapped_laplace(rng, model.noise_scale())
                          : Angle();
    data.theta.push_back(Angle::wrap(model.regression(x.radians()).radians() + zeta.radians()));
    data.z.push_back(Angle::wrap(x.radians() + eps.radians()));
  }
  return data;
}

RiskReport run_replications(int reps,
                            const std::function<ReplicationOutcome(int)>& task,
                            int threads) {
  require(reps >= 1, "at least one replication required");
  require(static_cast<bool>(task), "null replication task");

  int workers = threads > 0 ? threads
                            : static_cast<int>(std::thread::hardware_concurrency());
  workers = std::clamp(workers, 1, reps);

  RiskReport report;
  report.requested_reps = reps;
  report.outcomes.resize(static_cast<std::size_t>(reps));

  std::atomic<int> next{0};
  std::mutex error_mutex;
  std::exception_ptr first_error;
  auto worker = [&]() {
    for (;;) {
      const int index = next.fetch_add(1);
      if (index >= reps) return;
      const int replication = index + 1;  // stream ids are 1-based
      try {
        report.outcomes[static_cast<std::size_t>(index)] = task(replication);
        report.outcomes[static_cast<std::size_t>(index)].replication = replication;
      } catch (const UndefinedDirectionError&) {
        report.outcomes[static_cast<std::size_t>(index)] = {replication, true, 0.0, 0.0, 0.0};
      } catch (const IllPosedWeightError&) {
        report.outcomes[static_cast<std::size_t>(index)] = {replication, true, 0.0, 0.0, 0.0};
      } catch (...) {
        const std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
        return;
      }
    }
  };

  if (workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int t = 0; t < workers; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (first_error) std::rethrow_exception(first_error);

  // Reduction in replication order: identical for every worker count.
  int failures = 0;
  double sum = 0.0;
  for (const ReplicationOutcome& o : report.outcomes) {
    if (o.failed) {
      ++failures;
    } else {
      sum += o.error;
    }
  }
  report.failures = failures;
  if (failures > kMaxFailureFraction * reps) {
    throw NumericalError("estimator failed in " + std::to_string(failures) + " of " +
                         std::to_string(reps) + " replications (cap 5%)");
  }
  const int kept = reps - failures;
  report.mean_error = sum / kept;
  double ss = 0.0;
  for (const ReplicationOutcome& o : report.outcomes) {
    if (!o.failed) {
      const double d = o.error - report.mean_error;
      ss += d * d;
    }
  }
  report.std_error = kept > 1 ? std::sqrt(ss / (kept - 1) / kept) : 0.0;
  return report;
}

RiskReport run_monte_carlo(const SimulationModel& model, int n, double x, int reps,
                           const EstimatorConfig& config, std::uint64_t seed,
                           int threads) {
  const Angle truth = model.regression(x);
  const auto task = [&](int replication) {
    SeededRng rng(seed, static_cast<std::uint64_t>(replication));
    auto dataset = simulate_dataset(model, n, rng);
    ReplicationOutcome outcome;
    if (model.kind() == CovariateKind::Linear) {
      const auto estimate = estimate_direction_linear(std::get<LinearDataset>(dataset),
                                                      model.linear_noise(), x, config);
      outcome.error = circ_dist(estimate.direction, truth);
      outcome.selected_sine = estimate.sine.selected_bandwidth;
      outcome.selected_cosine = estimate.cosine.selected_bandwidth;
    } else {
      const auto estimate = estimate_direction_circular(std::get<CircularDataset>(dataset),
                                                        model.circular_noise(),
                                                        Angle::wrap(x), config);
      outcome.error = circ_dist(estimate.direction, truth);
      outcome.selected_sine = estimate.sine.selected_level;
      outcome.selected_cosine = estimate.cosine.selected_level;
    }
    return outcome;
  };
  RiskReport report = run_replications(reps, task, threads);
  report.x = x;
  report.n = n;
  report.seed = seed;
  return report;
}

bool CalibrationCurve::plateau_contains(double c0) const {
  if (plateau_start < 0 || points.empty()) return false;
  const double lo = points[static_cast<std::size_t>(plateau_start)].c0;
  const double hi = points.back().c0;
  return c0 >= lo * (1.0 - 1e-12) && c0 <= hi * (1.0 + 1e-12);
}

CalibrationCurve calibrate_c0(const SimulationModel& model, int n, double x, int reps,
                              const std::vector<double>& grid, std::uint64_t seed,
                              int threads) {
  require(!grid.empty(), "calibration grid is empty");
  std::vector<double> sorted = grid;
  std::sort(sorted.begin(), sorted.end());
  require(sorted.front() > 0.0, "calibration grid values must be positive");

  CalibrationCurve curve;
  curve.points.reserve(sorted.size());
  for (double c0 : sorted) {
    EstimatorConfig config;
    config.mode = SelectionMode::Adaptive;
    config.c0_sine = c0;
    config.c0_cosine = c0;
    // Same seed for every grid point: common random numbers across the sweep.
    const RiskReport report = run_monte_carlo(model, n, x, reps, config, seed, threads);
    curve.points.push_back({c0, report.mean_error, report.failures});
  }

  // Plateau: longest suffix in which every 3-point window is flat
  // ((max - min) / max <= 20%).
  const auto window_flat = [&](std::size_t i) {
    const double a = curve.points[i].mean_error;
    const double b = curve.points[i + 1].mean_error;
    const double c = curve.points[i + 2].mean_error;
    const double hi = std::max({a, b, c});
    const double lo = std::min({a, b, c});
    return hi <= 0.0 || (hi - lo) <= 0.2 * hi;
  };
  curve.plateau_start = -1;
  if (curve.points.size() >= 3) {
    std::size_t start = curve.points.size();  // sentinel: no flat suffix yet
    for (std::size_t i = curve.points.size() - 2; i-- > 0;) {
      if (!window_flat(i)) break;
      start = i;
    }
    if (start < curve.points.size()) curve.plateau_start = static_cast<int>(start);
  }
  return curve;
}

std::vector<double> default_calibration_grid(CovariateKind kind) {
  if (kind == CovariateKind::Linear) {
    return {0.001, 0.0025, 0.005, 0.0075, 0.01, 0.025, 0.05, 0.075, 0.1,
            0.2,   0.3,    0.4,   0.6,    0.8,  1.0,   2.0,  4.0};
  }
  return {0.001, 0.0025, 0.005, 0.0075, 0.01, 0.02, 0.04, 0.05, 0.06,
          0.08,  0.09,   0.1,   0.2,    0.4,  0.6,  1.0,  2.0,  4.0};
}

double reliability_ratio(const SimulationModel& model) {
  if (model.kind() == CovariateKind::Linear) {
    const double var_x = 1.0 / 12.0;  // U[0, 1]
    const double var_eps = 2.0 * model.noise_scale() * model.noise_scale();
    return var_x / (var_x + var_eps);
  }
  // Circular variances, 1 - mean resultant length.
  const double var_x = 1.0 - bessel_ratio(kCircularDesignKappa);
  const double lambda = model.noise_scale();
  const double var_eps =
      lambda > 0.0 ? 1.0 / (1.0 + lambda * lambda) : 0.0;
  return var_x / (var_x + var_eps);
}

Angle baseline_curve(BaselineCurve which, double x) {
  switch (which) {
    case BaselineCurve::FisherLee:
      return Angle::wrap(1.693 + 2.0 * std::atan(-0.0066 * (x - 47.65)));
    case BaselineCurve::ProjectedLinear:
      return atan2_wrapped(0.157 + 0.049 * x, -1.228 + 0.03 * x);
    case BaselineCurve::TrigPolynomial:
      return atan2_wrapped(1.0 + 0.021 * x, -1.49 + 0.029 * x);
  }
  throw std::invalid_argument("unknown baseline curve");
}

namespace {

template <class Dataset, class Noise, class EstimateFn>
std::vector<CurvePoint> estimate_curve_impl(const Dataset& data, const Noise& noise,
                                            const std::vector<double>& xs,
                                            const EstimatorConfig& config,
                                            const EstimateFn& estimate) {
  data.validate();
  std::vector<CurvePoint> out;
  out.reserve(xs.size());
  for (double x : xs) {
    CurvePoint point;
    point.x = x;
    try {
      estimate(data, noise, x, config, point);
    } catch (const UndefinedDirectionError&) {
      point.failed = true;
    } catch (const IllPosedWeightError&) {
      point.failed = true;
    }
    out.push_back(point);
  }
  return out;
}

}  // namespace

std::vector<CurvePoint> estimate_curve(const LinearDataset& data,
                                       const LinearNoiseModel& noise,
                                       const std::vector<double>& xs,
                                       const EstimatorConfig& config) {
  return estimate_curve_impl(
      data, noise, xs, config,
      [](const LinearDataset& d, const LinearNoiseModel& nm, double x,
         const EstimatorConfig& cfg, CurvePoint& point) {
        const LinearEstimate est = estimate_direction_linear(d, nm, x, cfg);
        point.direction = est.direction.radians();
        point.selected_sine = est.sine.selected_bandwidth;
        point.selected_cosine = est.cosine.selected_bandwidth;
      });
}

std::vector<CurvePoint> estimate_curve(const CircularDataset& data,
                                       const CircularNoiseModel& noise,
                                       const std::vector<double>& xs,
                                       const EstimatorConfig& config) {
  return estimate_curve_impl(
      data, noise, xs, config,
      [](const CircularDataset& d, const CircularNoiseModel& nm, double x,
         const EstimatorConfig& cfg, CurvePoint& point) {
        const CircularEstimate est =
            estimate_direction_circular(d, nm, Angle::wrap(x), cfg);
        point.direction = est.direction.radians();
        point.selected_sine = est.sine.selected_level;
        point.selected_cosine = est.cosine.selected_level;
      });
}

}  // namespace circreg
