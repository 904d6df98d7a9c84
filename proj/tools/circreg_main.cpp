// circreg: adaptive circular regression with contaminated covariates.
// Subcommands: simulate, calibrate, estimate, reliability.
//
// Exit codes: 0 success, 2 usage error, 3 data error, 4 numerical failure.
// Reruns with identical flags produce byte-identical output files.
#include <algorithm>
#include <charconv>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdio>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "circreg/errors.hpp"
#include "circreg/experiments.hpp"
#include "circreg/noise.hpp"
#include "circreg/report.hpp"
#include "circreg/version.hpp"

namespace {

using namespace circreg;

std::string fmt(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return (ec == std::errc()) ? std::string(buf, ptr) : std::string("nan");
}

std::string join(const std::vector<double>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i > 0) out += ' ';
    out += fmt(values[i]);
  }
  return out;
}

/// Benchmark-model flags shared by simulate / calibrate / reliability.
struct ModelFlags {
  std::string model;
  double sigma_eps = 0.0;
  double lambda_eps = 0.0;
  CLI::Option* sigma_opt = nullptr;
  CLI::Option* lambda_opt = nullptr;

  void attach(CLI::App& cmd) {
    cmd.add_option("--model", model, "Benchmark model: lc (linear covariate) or cc (circular)")
        ->required()
        ->check(CLI::IsMember({"lc", "cc"}));
    sigma_opt = cmd.add_option("--sigma-eps", sigma_eps,
                               "Covariate error scale for --model lc (Laplace; 0 = none)")
                    ->check(CLI::NonNegativeNumber);
    lambda_opt = cmd.add_option("--lambda-eps", lambda_eps,
                                "Covariate error rate for --model cc (wrapped Laplace; 0 = none)")
                     ->check(CLI::NonNegativeNumber);
  }

  [[nodiscard]] SimulationModel resolve() const {
    if (model == "lc") {
      if (lambda_opt->count() > 0)
        throw std::invalid_argument("--lambda-eps applies to --model cc; use --sigma-eps");
      if (sigma_opt->count() == 0)
        throw std::invalid_argument("--model lc requires --sigma-eps");
      return SimulationModel::linear_covariate(sigma_eps);
    }
    if (sigma_opt->count() > 0)
      throw std::invalid_argument("--sigma-eps applies to --model lc; use --lambda-eps");
    if (lambda_opt->count() == 0)
      throw std::invalid_argument("--model cc requires --lambda-eps");
    return SimulationModel::circular_covariate(lambda_eps);
  }

  void echo(ConfigEcho& config) const {
    config["model"] = model;
    if (model == "lc") config["sigma_eps"] = fmt(sigma_eps);
    if (model == "cc") config["lambda_eps"] = fmt(lambda_eps);
  }
};

/// Smoothing-selection flags: mode plus the adaptive tuning constants.
struct SelectionFlags {
  std::string mode = "adaptive";
  double c0 = 0.0;
  double c0_sine = 0.0;
  double c0_cosine = 0.0;
  CLI::Option* mode_opt = nullptr;
  CLI::Option* c0_opt = nullptr;
  CLI::Option* c0_sine_opt = nullptr;
  CLI::Option* c0_cosine_opt = nullptr;

  void attach(CLI::App& cmd) {
    mode_opt = cmd.add_option("--mode", mode,
                              "Smoothing selection: adaptive/os (data-driven, needs --c0) or "
                              "plugin/ss (rate formula from the noise smoothness)")
                   ->check(CLI::IsMember({"adaptive", "os", "plugin", "ss"}));
    c0_opt = cmd.add_option("--c0", c0, "Penalty constant for both trig components")
                 ->check(CLI::PositiveNumber);
    c0_sine_opt = cmd.add_option("--c0-sine", c0_sine, "Penalty constant for the sine component")
                      ->check(CLI::PositiveNumber);
    c0_cosine_opt =
        cmd.add_option("--c0-cosine", c0_cosine, "Penalty constant for the cosine component")
            ->check(CLI::PositiveNumber);
  }

  [[nodiscard]] bool plug_in() const { return mode == "plugin" || mode == "ss"; }

  [[nodiscard]] EstimatorConfig resolve() const {
    EstimatorConfig config;
    if (plug_in()) {
      if (c0_opt->count() || c0_sine_opt->count() || c0_cosine_opt->count())
        throw std::invalid_argument("--c0 flags apply to adaptive mode only");
      config.mode = SelectionMode::PlugIn;
      return config;
    }
    config.mode = SelectionMode::Adaptive;
    const bool has_sine = c0_opt->count() || c0_sine_opt->count();
    const bool has_cosine = c0_opt->count() || c0_cosine_opt->count();
    if (!has_sine || !has_cosine)
      throw std::invalid_argument(
          "adaptive mode requires --c0 (or both --c0-sine and --c0-cosine)");
    config.c0_sine = c0_sine_opt->count() ? c0_sine : c0;
    config.c0_cosine = c0_cosine_opt->count() ? c0_cosine : c0;
    return config;
  }

  void echo(ConfigEcho& config) const {
    config["mode"] = plug_in() ? "plugin" : "adaptive";
    if (!plug_in()) {
      const EstimatorConfig resolved = resolve();
      config["c0_sine"] = fmt(resolved.c0_sine);
      config["c0_cosine"] = fmt(resolved.c0_cosine);
    }
  }
};

/// Output destination flags. Without --out the chosen format goes to stdout.
struct OutputFlags {
  std::string out;
  std::string format = "csv";
  CLI::Option* out_opt = nullptr;

  void attach(CLI::App& cmd) {
    out_opt = cmd.add_option("--out", out, "Output path prefix (writes <prefix>.csv / .json)");
    cmd.add_option("--format", format, "Output format")
        ->check(CLI::IsMember({"csv", "json", "both"}));
  }

  void emit(const std::string& csv, const std::string& json) const {
    if (out_opt->count() == 0) {
      if (format == "both")
        throw std::invalid_argument("--format both requires --out");
      std::cout << (format == "csv" ? csv : json);
      return;
    }
    if (format == "csv" || format == "both") write_file(out + ".csv", csv);
    if (format == "json" || format == "both") write_file(out + ".json", json);
  }

  void echo(ConfigEcho& config) const { config["format"] = format; }
};

/// Parses "gamma=<rate>,rho=<power>" supersmoothness declarations.
std::pair<double, double> parse_ss_spec(const std::string& spec) {
  double gamma = 0.0;
  double rho = 0.0;
  bool saw_gamma = false;
  bool saw_rho = false;
  std::string rest = spec;
  while (!rest.empty()) {
    const auto comma = rest.find(',');
    const std::string field = rest.substr(0, comma);
    rest = comma == std::string::npos ? std::string() : rest.substr(comma + 1);
    const auto eq = field.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("--ss expects gamma=<rate>,rho=<power>, got '" + spec + "'");
    const std::string key = field.substr(0, eq);
    double value = 0.0;
    try {
      std::size_t used = 0;
      value = std::stod(field.substr(eq + 1), &used);
      if (used != field.size() - eq - 1) throw std::invalid_argument("trailing text");
    } catch (const std::exception&) {
      throw std::invalid_argument("--ss: unreadable value in '" + field + "'");
    }
    if (key == "gamma") {
      gamma = value;
      saw_gamma = true;
    } else if (key == "rho") {
      rho = value;
      saw_rho = true;
    } else {
      throw std::invalid_argument("--ss: unknown key '" + key + "'");
    }
  }
  if (!saw_gamma || !saw_rho || gamma <= 0.0 || rho <= 0.0)
    throw std::invalid_argument("--ss needs positive gamma=<rate>,rho=<power>");
  return {gamma, rho};
}

int run_simulate(const ModelFlags& model_flags, const SelectionFlags& selection,
                 const OutputFlags& output, int n, double x, int reps, std::uint64_t seed,
                 int threads) {
  const SimulationModel model = model_flags.resolve();
  const EstimatorConfig config = selection.resolve();
  const RiskReport report = run_monte_carlo(model, n, x, reps, config, seed, threads);

  ConfigEcho echo = make_config_echo();
  echo["command"] = "simulate";
  model_flags.echo(echo);
  selection.echo(echo);
  output.echo(echo);
  echo["threads"] = std::to_string(threads);
  // x, n, reps, and seed are first-class fields of the risk report itself.

  output.emit(risk_report_csv(report, echo), risk_report_json(report, echo));
  return 0;
}

int run_calibrate(const ModelFlags& model_flags, const OutputFlags& output,
                  const std::vector<double>& grid_flag, int n, double x, int reps,
                  std::uint64_t seed, int threads) {
  const SimulationModel model = model_flags.resolve();
  const std::vector<double> grid =
      grid_flag.empty() ? default_calibration_grid(model.kind()) : grid_flag;
  const CalibrationCurve curve = calibrate_c0(model, n, x, reps, grid, seed, threads);

  ConfigEcho echo = make_config_echo();
  echo["command"] = "calibrate";
  model_flags.echo(echo);
  output.echo(echo);
  echo["n"] = std::to_string(n);
  echo["x"] = fmt(x);
  echo["reps"] = std::to_string(reps);
  echo["seed"] = std::to_string(seed);
  echo["threads"] = std::to_string(threads);
  echo["grid"] = join(grid);

  output.emit(calibration_csv(curve, echo), calibration_json(curve, echo));
  return 0;
}

int run_estimate(const SelectionFlags& selection, const OutputFlags& output,
                 const std::string& data_path, const std::string& noise_spec,
                 const std::string& ss_spec, bool ss_given, std::vector<double> x_grid,
                 bool baselines) {
  const LinearDataset data = read_distance_direction_csv(data_path);

  LinearNoiseModel noise = parse_linear_noise(noise_spec);
  if (ss_given) {
    if (selection.mode_opt->count() > 0 && !selection.plug_in())
      throw std::invalid_argument("--ss declares plug-in smoothness; it conflicts with "
                                  "--mode adaptive");
    const auto [gamma, rho] = parse_ss_spec(ss_spec);
    noise = LinearNoiseModel::custom_super(
        gamma, rho, [base = noise](double t) -> std::complex<double> { return base.cf(t); });
  }
  EstimatorConfig config;
  if (ss_given && selection.mode_opt->count() == 0) {
    if (selection.c0_opt->count() || selection.c0_sine_opt->count() ||
        selection.c0_cosine_opt->count())
      throw std::invalid_argument("--c0 flags apply to adaptive mode only");
    config.mode = SelectionMode::PlugIn;
  } else {
    config = selection.resolve();
  }

  if (x_grid.empty()) {
    const auto [lo_it, hi_it] = std::minmax_element(data.z.begin(), data.z.end());
    const double lo = *lo_it;
    const double hi = *hi_it;
    const int count = 100;
    for (int i = 0; i < count; ++i) {
      x_grid.push_back(lo + (hi - lo) * static_cast<double>(i) / (count - 1));
    }
  }

  const std::vector<CurvePoint> curve = estimate_curve(data, noise, x_grid, config);

  ConfigEcho echo = make_config_echo();
  echo["command"] = "estimate";
  echo["data"] = data_path;
  echo["noise"] = noise_spec;
  if (ss_given) echo["ss"] = ss_spec;
  if (config.mode == SelectionMode::PlugIn) {
    echo["mode"] = "plugin";
  } else {
    selection.echo(echo);
  }
  output.echo(echo);
  echo["baselines"] = baselines ? "1" : "0";
  echo["x_grid"] = join(x_grid);

  output.emit(curve_csv(curve, echo, baselines), curve_json(curve, echo, baselines));
  return 0;
}

int run_reliability(const ModelFlags& model_flags) {
  const SimulationModel model = model_flags.resolve();
  const double value = reliability_ratio(model);
  // Published tables display the ratio truncated (not rounded) to 2 decimals.
  const double truncated = std::trunc(value * 100.0) / 100.0;
  std::printf("reliability: %.2f\n", truncated);
  std::printf("exact: %s\n", fmt(value).c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Adaptive circular regression with contaminated covariates"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  // --- simulate ---------------------------------------------------------
  auto* simulate = app.add_subcommand(
      "simulate", "Monte Carlo risk of the estimator at one covariate value");
  ModelFlags sim_model;
  SelectionFlags sim_selection;
  OutputFlags sim_output;
  int sim_n = 0;
  double sim_x = 0.0;
  int sim_reps = 50;
  std::uint64_t sim_seed = 1;
  int sim_threads = 0;
  sim_model.attach(*simulate);
  sim_selection.attach(*simulate);
  sim_output.attach(*simulate);
  simulate->add_option("--n", sim_n, "Sample size per replication")
      ->required()
      ->check(CLI::PositiveNumber);
  simulate->add_option("--x", sim_x, "Covariate value to evaluate at")->required();
  simulate->add_option("--reps", sim_reps, "Monte Carlo replications")
      ->check(CLI::PositiveNumber);
  simulate->add_option("--seed", sim_seed, "Base seed (replication r uses stream r)");
  simulate->add_option("--threads", sim_threads, "Worker threads (0 = hardware)");

  // --- calibrate --------------------------------------------------------
  auto* calibrate = app.add_subcommand(
      "calibrate", "Sweep the penalty constant and mark the stable plateau");
  ModelFlags cal_model;
  OutputFlags cal_output;
  std::vector<double> cal_grid;
  int cal_n = 0;
  double cal_x = 0.0;
  int cal_reps = 50;
  std::uint64_t cal_seed = 1;
  int cal_threads = 0;
  cal_model.attach(*calibrate);
  cal_output.attach(*calibrate);
  calibrate->add_option("--n", cal_n, "Sample size per replication")
      ->required()
      ->check(CLI::PositiveNumber);
  calibrate->add_option("--x", cal_x, "Covariate value to evaluate at")->required();
  calibrate->add_option("--reps", cal_reps, "Monte Carlo replications per grid point")
      ->check(CLI::PositiveNumber);
  calibrate->add_option("--grid", cal_grid, "Penalty constants to sweep (default: built-in grid)")
      ->check(CLI::PositiveNumber);
  calibrate->add_option("--seed", cal_seed, "Base seed (shared across grid points)");
  calibrate->add_option("--threads", cal_threads, "Worker threads (0 = hardware)");

  // --- estimate ---------------------------------------------------------
  auto* estimate = app.add_subcommand(
      "estimate", "Fit the regression curve to a distance/direction CSV");
  SelectionFlags est_selection;
  OutputFlags est_output;
  std::string est_data;
  std::string est_noise;
  std::string est_ss;
  std::vector<double> est_x_grid;
  bool est_baselines = false;
  estimate->add_option("--data", est_data, "CSV with header distance,direction_radians")
      ->required();
  estimate->add_option("--noise", est_noise,
                       "Covariate error model: none, laplace:<sigma>, gaussian:<sigma>")
      ->required();
  auto* ss_opt = estimate->add_option(
      "--ss", est_ss, "Override the noise smoothness as gamma=<rate>,rho=<power> (plug-in mode)");
  est_selection.attach(*estimate);
  est_output.attach(*estimate);
  estimate->add_option("--x-grid", est_x_grid,
                       "Evaluation points (default: 100 points spanning the data)");
  estimate->add_flag("--baselines", est_baselines,
                     "Append the published reference fits as extra columns");

  // --- reliability ------------------------------------------------------
  auto* reliability = app.add_subcommand(
      "reliability", "Signal-to-total variance ratio of a benchmark model");
  ModelFlags rel_model;
  rel_model.attach(*reliability);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (simulate->parsed()) {
      return run_simulate(sim_model, sim_selection, sim_output, sim_n, sim_x, sim_reps,
                          sim_seed, sim_threads);
    }
    if (calibrate->parsed()) {
      return run_calibrate(cal_model, cal_output, cal_grid, cal_n, cal_x, cal_reps, cal_seed,
                           cal_threads);
    }
    if (estimate->parsed()) {
      return run_estimate(est_selection, est_output, est_data, est_noise, est_ss,
                          ss_opt->count() > 0, est_x_grid, est_baselines);
    }
    return run_reliability(rel_model);
  } catch (const DataError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return 3;
  } catch (const NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 4;
  } catch (const UndefinedDirectionError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 4;
  } catch (const IllPosedWeightError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 4;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
