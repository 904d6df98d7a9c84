// Acceptance checks for the adaptive circular-regression artifact.
//
// Each numbered criterion prints exactly one PASS/FAIL line (the last one is
// informational). The process exits nonzero if any check fails. Reference
// values are the published benchmark tables; statistical checks use fixed
// seeds and documented tolerance bands.
#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "circreg/angle.hpp"
#include "circreg/bessel.hpp"
#include "circreg/circular.hpp"
#include "circreg/common.hpp"
#include "circreg/experiments.hpp"
#include "circreg/linear.hpp"
#include "circreg/noise.hpp"
#include "circreg/rng.hpp"

namespace {

using namespace circreg;

constexpr std::uint64_t kSeed = 1;

void report(int criterion, bool pass, const std::string& detail) {
  std::printf("%s criterion %d: %s\n", pass ? "PASS" : "FAIL", criterion, detail.c_str());
  std::fflush(stdout);
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4f", v);
  return buf;
}

/// Composite Simpson rule in extended precision (panels must be even).
long double simpson(const std::function<long double(long double)>& f, long double a,
                    long double b, int panels) {
  const long double step = (b - a) / panels;
  long double sum = f(a) + f(b);
  for (int i = 1; i < panels; ++i) {
    sum += f(a + step * i) * ((i % 2 == 1) ? 4.0L : 2.0L);
  }
  return sum * step / 3.0L;
}

// --- criteria 1 and 2: benchmark table reproduction ------------------------

struct TableCell {
  double scale;
  int n;
  double published_me;
  double me = 0.0;
};

bool run_table(int criterion, CovariateKind kind, double x, double c0,
               std::vector<TableCell>& cells) {
  EstimatorConfig config;
  config.c0_sine = c0;
  config.c0_cosine = c0;
  for (TableCell& cell : cells) {
    const SimulationModel model = kind == CovariateKind::Linear
                                      ? SimulationModel::linear_covariate(cell.scale)
                                      : SimulationModel::circular_covariate(cell.scale);
    cell.me = run_monte_carlo(model, cell.n, x, 50, config, kSeed, 0).mean_error;
  }

  bool in_band = true;
  std::string band_notes;
  for (const TableCell& cell : cells) {
    const double lo = cell.published_me / 2.0;
    const double hi = 2.0 * cell.published_me;
    if (cell.me >= lo && cell.me <= hi) continue;
    in_band = false;
    band_notes += band_notes.empty() ? " (" : "; ";
    band_notes += "scale " + num(cell.scale) + " n=" + std::to_string(cell.n) + ": " +
                  num(cell.me) + (cell.me < lo ? " below [" : " above [") + num(lo) +
                  ", " + num(hi) + "]";
  }
  if (!band_notes.empty()) band_notes += ")";
  // Cells are ordered (scale0,n200),(scale0,n500),(scale1,n200),(scale1,n500)
  // with scale1 the noisier configuration.
  const bool monotone_n = cells[1].me < cells[0].me && cells[3].me < cells[2].me;
  const bool monotone_noise = cells[2].me > cells[0].me && cells[3].me > cells[1].me;

  std::string detail = kind == CovariateKind::Linear ? "table-1 (linear covariate)"
                                                     : "table-2 (circular covariate)";
  detail += " MEs {";
  for (std::size_t i = 0; i < cells.size(); ++i) {
    detail += (i ? ", " : "") + num(cells[i].me);
  }
  detail += "} vs published {";
  for (std::size_t i = 0; i < cells.size(); ++i) {
    detail += (i ? ", " : "") + num(cells[i].published_me);
  }
  detail += "}; factor-2 band " + std::string(in_band ? "ok" : "VIOLATED") + band_notes;
  detail += ", risk falls in n " + std::string(monotone_n ? "ok" : "VIOLATED");
  detail += ", rises with noise " + std::string(monotone_noise ? "ok" : "VIOLATED");
  const bool pass = in_band && monotone_n && monotone_noise;
  report(criterion, pass, detail);
  return pass;
}

// --- criterion 3: reliability ratios ---------------------------------------

std::string truncated_2dp(double v) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%.2f", std::trunc(v * 100.0) / 100.0);
  return buf;
}

bool criterion3() {
  const bool pass =
      truncated_2dp(reliability_ratio(SimulationModel::linear_covariate(0.075))) == "0.88" &&
      truncated_2dp(reliability_ratio(SimulationModel::linear_covariate(0.1))) == "0.80" &&
      truncated_2dp(reliability_ratio(SimulationModel::circular_covariate(2.54))) == "0.88" &&
      truncated_2dp(reliability_ratio(SimulationModel::circular_covariate(1.74))) == "0.80";
  report(3, pass,
         "reliability ratios reproduce the published two-decimal values "
         "{0.88, 0.80, 0.88, 0.80} exactly (displayed truncated)");
  return pass;
}

// --- criterion 4: calibration plateaus -------------------------------------

bool criterion4() {
  const auto lc_curve =
      calibrate_c0(SimulationModel::linear_covariate(0.075), 200, 0.2, 50,
                   default_calibration_grid(CovariateKind::Linear), kSeed, 0);
  const bool lc_ok = lc_curve.plateau_contains(0.4);

  const auto cc_curve =
      calibrate_c0(SimulationModel::circular_covariate(2.54), 200, 1.5, 50,
                   default_calibration_grid(CovariateKind::Circular), kSeed, 0);
  const bool cc_ok = cc_curve.plateau_contains(0.08);

  const auto plateau_from = [](const CalibrationCurve& curve) {
    return curve.plateau_start < 0
               ? std::string("none")
               : num(curve.points[static_cast<std::size_t>(curve.plateau_start)].c0);
  };
  const auto risk_note = [](const CalibrationCurve& curve, double target) {
    const CalibrationPoint* at = nullptr;
    const CalibrationPoint* best = &curve.points.front();
    for (const CalibrationPoint& p : curve.points) {
      if (p.c0 == target) at = &p;
      if (p.mean_error < best->mean_error) best = &p;
    }
    std::string note = ", curve minimum " + num(best->mean_error) + " at c0=" + num(best->c0);
    if (at) note += ", risk at target " + num(at->mean_error);
    return note;
  };
  report(4, lc_ok && cc_ok,
         "calibration plateaus: linear plateau starts at c0=" + plateau_from(lc_curve) +
             (lc_ok ? " and contains 0.4" : " and MISSES 0.4" + risk_note(lc_curve, 0.4)) +
             "; circular plateau starts at c0=" + plateau_from(cc_curve) +
             (cc_ok ? " and contains 0.08" : " and MISSES 0.08" + risk_note(cc_curve, 0.08)));
  return lc_ok && cc_ok;
}

// --- criterion 5: oracle equivalence on random small instances -------------

double circular_brute_force(const CircularDataset& data, const std::vector<double>& weights,
                            int level, const CircularNoiseModel& noise, double x) {
  std::complex<long double> total = 0.0L;
  for (std::size_t j = 0; j < data.size(); ++j) {
    for (int l = -level; l <= level; ++l) {
      const std::complex<double> cf = noise.cf(l);
      const std::complex<long double> cfl(cf.real(), cf.imag());
      const long double phase = static_cast<long double>(l) *
                                (data.z[j].radians() - static_cast<long double>(x));
      total += static_cast<long double>(weights[j]) *
               std::complex<long double>(std::cos(phase), std::sin(phase)) / cfl;
    }
  }
  const long double two_pi = 6.283185307179586476925286766559L;
  return static_cast<double>(total.real() / (two_pi * static_cast<long double>(data.size())));
}

double linear_weight_by_quadrature(double u, double h, const LinearNoiseModel& noise) {
  const long double big_t = 1.0L / static_cast<long double>(h);
  const auto integrand = [&](long double t) {
    const std::complex<double> cf = noise.cf(static_cast<double>(t));
    const std::complex<long double> cfl(cf.real(), cf.imag());
    const std::complex<long double> phase(std::cos(t * u), std::sin(t * u));
    return (phase / cfl).real();
  };
  const long double two_pi = 6.283185307179586476925286766559L;
  return static_cast<double>(simpson(integrand, -big_t, big_t, 40000) / two_pi);
}

double linear_brute_force(const LinearDataset& data, const std::vector<double>& weights,
                          double h, const LinearNoiseModel& noise, double x) {
  long double total = 0.0L;
  for (std::size_t j = 0; j < data.size(); ++j) {
    total += static_cast<long double>(weights[j]) *
             static_cast<long double>(linear_weight_by_quadrature(data.z[j] - x, h, noise));
  }
  return static_cast<double>(total / static_cast<long double>(data.size()));
}

bool criterion5() {
  SeededRng rng(kSeed, 777);
  const std::vector<CircularNoiseModel> circ_models = {
      CircularNoiseModel::none(), CircularNoiseModel::wrapped_laplace(1.5),
      CircularNoiseModel::wrapped_laplace(0.8)};
  double worst_circ = 0.0;
  for (int instance = 0; instance < 100; ++instance) {
    const int n = 1 + static_cast<int>(rng.uniform01() * 10.0) % 10;
    const int level = 1 + instance % 5;
    const auto& noise = circ_models[static_cast<std::size_t>(instance) % circ_models.size()];
    CircularDataset data;
    for (int i = 0; i < n; ++i) {
      data.theta.push_back(wrap(rng.uniform(-kPi, kPi)));
      data.z.push_back(wrap(rng.uniform(-kPi, kPi)));
    }
    const TrigWeights weights(data.theta);
    const double x = rng.uniform(-kPi, kPi);
    for (const TrigComponent component : {TrigComponent::Sine, TrigComponent::Cosine}) {
      const double ours =
          projection_estimate(data, weights, component, level, noise, wrap(x));
      const double oracle =
          circular_brute_force(data, weights.component(component), level, noise, x);
      worst_circ = std::max(worst_circ, std::fabs(ours - oracle));
    }
  }

  const std::vector<LinearNoiseModel> lin_models = {LinearNoiseModel::none(),
                                                    LinearNoiseModel::laplace(0.075),
                                                    LinearNoiseModel::laplace(0.3)};
  const double bandwidths[] = {1.0, 0.5, 1.0 / 3.0};
  double worst_lin = 0.0;
  for (int instance = 0; instance < 100; ++instance) {
    const int n = 1 + static_cast<int>(rng.uniform01() * 10.0) % 10;
    const double h = bandwidths[instance % 3];
    const auto& noise = lin_models[static_cast<std::size_t>(instance) % lin_models.size()];
    LinearDataset data;
    for (int i = 0; i < n; ++i) {
      data.theta.push_back(wrap(rng.uniform(-kPi, kPi)));
      data.z.push_back(rng.uniform(-0.5, 1.5));
    }
    const TrigWeights weights(data.theta);
    const double x = rng.uniform(-0.5, 1.5);
    for (const TrigComponent component : {TrigComponent::Sine, TrigComponent::Cosine}) {
      const double ours =
          projection_estimate_linear(data, weights, component, h, noise, x);
      const double oracle =
          linear_brute_force(data, weights.component(component), h, noise, x);
      worst_lin = std::max(worst_lin, std::fabs(ours - oracle));
    }
  }

  const bool pass = worst_circ <= 1e-10 && worst_lin <= 1e-8;
  char detail[192];
  std::snprintf(detail, sizeof(detail),
                "oracle equivalence on 100 random instances per pipeline: worst "
                "|difference| %.3g (circular, tol 1e-10), %.3g (linear, tol 1e-8)",
                worst_circ, worst_lin);
  report(5, pass, detail);
  return pass;
}

// --- criterion 6: finite-sample mean matches the smoothed target -----------

bool criterion6() {
  const int reps = 2000;
  const int n = 20;

  // Circular pipeline: E p_hat_{1,L}(x) equals the Dirichlet-smoothed target
  //   (2 pi)^-1 Integral g(theta) D_L(theta - x) dtheta,
  // g(theta) = rho(5) sin(m(theta)) f_X(theta), because the covariate-error
  // characteristic function cancels in expectation.
  const double x_circ = 1.5;
  const int level = 3;
  const double lambda = 2.54;
  const SimulationModel cc = SimulationModel::circular_covariate(lambda);
  const CircularNoiseModel circ_noise = cc.circular_noise();

  const long double pi_l = 3.141592653589793238462643383279L;
  const long double rho5 = bessel_ratio(5.0);
  const long double kappa_x = 0.01L;
  // Normalizer 2 pi I_0(0.01) by direct integration of exp(kappa cos).
  const long double norm = simpson(
      [&](long double t) { return std::exp(kappa_x * std::cos(t)); }, -pi_l, pi_l, 1 << 16);
  const auto dirichlet = [&](long double u) {
    const long double s = std::sin(u / 2.0L);
    if (std::fabs(s) < 1e-9L) return 2.0L * level + 1.0L;
    return std::sin((level + 0.5L) * u) / s;
  };
  const long double truth_circ =
      simpson(
          [&](long double theta) {
            const long double m = 0.5L + std::cos(theta + 3.0L * std::sin(theta));
            const long double g =
                rho5 * std::sin(m) * std::exp(kappa_x * std::cos(theta)) / norm;
            return g * dirichlet(theta - x_circ);
          },
          -pi_l, pi_l, 1 << 16) /
      (2.0L * pi_l);

  double sum = 0.0;
  double sum_sq = 0.0;
  for (int r = 1; r <= reps; ++r) {
    SeededRng rng(kSeed, static_cast<std::uint64_t>(r));
    const auto data = std::get<CircularDataset>(simulate_dataset(cc, n, rng));
    const TrigWeights weights(data.theta);
    const double value = projection_estimate(data, weights, TrigComponent::Sine, level,
                                             circ_noise, wrap(x_circ));
    sum += value;
    sum_sq += value * value;
  }
  const double mean_circ = sum / reps;
  const double se_circ =
      std::sqrt((sum_sq - sum * sum / reps) / (reps - 1.0) / reps);
  const double gap_circ = std::fabs(mean_circ - static_cast<double>(truth_circ));
  const bool circ_ok = gap_circ <= 3.0 * se_circ;

  // Linear pipeline: E p_hat_{1,h}(x) equals the kernel-smoothed target
  //   Integral_0^1 K_h(x - y) rho(10) sin(m(y)) dy.
  const double x_lin = 0.2;
  const double h = 0.25;
  const double sigma = 0.075;
  const SimulationModel lc = SimulationModel::linear_covariate(sigma);
  const LinearNoiseModel lin_noise = lc.linear_noise();

  const long double rho10 = bessel_ratio(10.0);
  const auto kernel = [&](long double u) {
    const long double s = u / static_cast<long double>(h);
    if (std::fabs(s) < 1e-6L) return (1.0L - s * s / 6.0L) / (pi_l * h);
    return std::sin(s) / (pi_l * u);
  };
  const long double truth_lin = simpson(
      [&](long double y) {
        const long double m = std::atan2(20.0L * y - 11.0L,
                                         (10.0L * y - 5.0L) * (10.0L * y - 5.0L) + 2.0L);
        return kernel(x_lin - y) * rho10 * std::sin(m);
      },
      0.0L, 1.0L, 1 << 16);

  sum = 0.0;
  sum_sq = 0.0;
  for (int r = 1; r <= reps; ++r) {
    SeededRng rng(kSeed, static_cast<std::uint64_t>(r));
    const auto data = std::get<LinearDataset>(simulate_dataset(lc, n, rng));
    const TrigWeights weights(data.theta);
    const double value =
        projection_estimate_linear(data, weights, TrigComponent::Sine, h, lin_noise, x_lin);
    sum += value;
    sum_sq += value * value;
  }
  const double mean_lin = sum / reps;
  const double se_lin = std::sqrt((sum_sq - sum * sum / reps) / (reps - 1.0) / reps);
  const double gap_lin = std::fabs(mean_lin - static_cast<double>(truth_lin));
  const bool lin_ok = gap_lin <= 3.0 * se_lin;

  char detail[224];
  std::snprintf(detail, sizeof(detail),
                "unbiasedness at reps=2000, n=20: circular gap %.2e vs 3SE %.2e, linear "
                "gap %.2e vs 3SE %.2e (means match quadrature ground truths)",
                gap_circ, 3.0 * se_circ, gap_lin, 3.0 * se_lin);
  report(6, circ_ok && lin_ok, detail);
  return circ_ok && lin_ok;
}

// --- criterion 7: invariant property suite ----------------------------------

bool criterion7() {
  SeededRng rng(kSeed, 4242);
  std::vector<std::string> violations;

  // atan2 combination is invariant under positive rescaling of both parts.
  for (int i = 0; i < 2000 && violations.empty(); ++i) {
    const double s = rng.uniform(-5.0, 5.0);
    const double c = rng.uniform(-5.0, 5.0);
    if (s == 0.0 && c == 0.0) continue;
    const double scale = std::exp(rng.uniform(-18.0, 18.0));
    const double gap = circ_dist(atan2_wrapped(scale * s, scale * c), atan2_wrapped(s, c));
    if (gap > 1e-13) violations.push_back("atan2 scale invariance");
  }

  // The risk metric is symmetric, vanishes on the diagonal, and stays in [0,2].
  for (int i = 0; i < 2000 && violations.empty(); ++i) {
    const Angle a = wrap(rng.uniform(-10.0, 10.0));
    const Angle b = wrap(rng.uniform(-10.0, 10.0));
    const double d = circ_dist(a, b);
    if (d < 0.0 || d > 2.0 || d != circ_dist(b, a) || circ_dist(a, a) != 0.0)
      violations.push_back("distance bounds/symmetry");
  }

  // Every adaptively selected level / bandwidth is a member of its grid.
  for (int i = 0; i < 20 && violations.empty(); ++i) {
    const int n = 30 + 10 * i;
    {
      SeededRng draw(kSeed, 9000 + static_cast<std::uint64_t>(i));
      const auto model = SimulationModel::circular_covariate(2.54);
      const auto data = std::get<CircularDataset>(simulate_dataset(model, n, draw));
      const TrigWeights weights(data.theta);
      const auto noise = model.circular_noise();
      const auto selection =
          gl_select_level(data, weights, TrigComponent::Sine, noise, wrap(1.5), 0.08);
      const auto grid = level_grid(n, noise).levels;
      if (std::find(grid.begin(), grid.end(), selection.selected_level) == grid.end())
        violations.push_back("selected level not in grid");
    }
    {
      SeededRng draw(kSeed, 9500 + static_cast<std::uint64_t>(i));
      const auto model = SimulationModel::linear_covariate(0.1);
      const auto data = std::get<LinearDataset>(simulate_dataset(model, n, draw));
      const TrigWeights weights(data.theta);
      const auto noise = model.linear_noise();
      const auto selection =
          gl_select_bandwidth(data, weights, TrigComponent::Cosine, noise, 0.2, 0.4);
      const auto grid = bandwidth_grid(n, noise).bandwidths;
      if (std::find(grid.begin(), grid.end(), selection.selected_bandwidth) == grid.end())
        violations.push_back("selected bandwidth not in grid");
    }
  }

  // Fixed seeds give bitwise-identical reports for any thread count.
  if (violations.empty()) {
    EstimatorConfig config;
    config.c0_sine = 0.4;
    config.c0_cosine = 0.4;
    const auto model = SimulationModel::linear_covariate(0.075);
    const auto a = run_monte_carlo(model, 100, 0.2, 16, config, kSeed, 1);
    const auto b = run_monte_carlo(model, 100, 0.2, 16, config, kSeed, 4);
    const auto c = run_monte_carlo(model, 100, 0.2, 16, config, kSeed, 1);
    if (a.mean_error != b.mean_error || a.mean_error != c.mean_error ||
        a.std_error != b.std_error)
      violations.push_back("seeded determinism across thread counts");
    for (const auto& outcome : a.outcomes) {
      if (outcome.error < 0.0 || outcome.error > 2.0)
        violations.push_back("replication error outside [0,2]");
    }
  }

  // Closed-form weight norms agree with extended-precision quadrature.
  if (violations.empty()) {
    for (const double sigma : {0.075, 0.1, 0.3}) {
      const auto noise = LinearNoiseModel::laplace(sigma);
      for (const double h : {1.0, 0.5, 0.2, 0.1}) {
        const long double big_t = 1.0L / static_cast<long double>(h);
        const long double sig = sigma;
        const long double l1 = simpson(
            [&](long double t) { return 1.0L + sig * sig * t * t; }, -big_t, big_t, 20000);
        const long double l2 = simpson(
            [&](long double t) {
              const long double inv = 1.0L + sig * sig * t * t;
              return inv * inv;
            },
            -big_t, big_t, 20000);
        if (std::fabs(weight_l1_norm(h, noise) - static_cast<double>(l1)) >
                1e-8 * static_cast<double>(l1) ||
            std::fabs(weight_l2sq_norm(h, noise) - static_cast<double>(l2)) >
                1e-8 * static_cast<double>(l2))
          violations.push_back("closed-form vs quadrature norms");
      }
    }
  }

  const bool pass = violations.empty();
  report(7, pass,
         pass ? "invariants hold: atan2 scale invariance, distance bounds/symmetry, "
                "grid admissibility of every selection, seeded determinism, "
                "closed-form vs quadrature norm agreement at 1e-8"
              : "first violated invariant: " + violations.front());
  return pass;
}

}  // namespace

int main() {
  bool all = true;

  std::vector<TableCell> table1 = {{0.075, 200, 0.0064},
                                   {0.075, 500, 0.0029},
                                   {0.1, 200, 0.0137},
                                   {0.1, 500, 0.0048}};
  all &= run_table(1, CovariateKind::Linear, 0.2, 0.4, table1);

  std::vector<TableCell> table2 = {{2.54, 200, 0.0124},
                                   {2.54, 500, 0.0091},
                                   {1.74, 200, 0.0139},
                                   {1.74, 500, 0.0107}};
  all &= run_table(2, CovariateKind::Circular, 1.5, 0.08, table2);

  all &= criterion3();
  all &= criterion4();
  all &= criterion5();
  all &= criterion6();
  all &= criterion7();

  std::printf(
      "INFO criterion 8: convergence-rate guarantees are asymptotic and not testable at "
      "desk scale; they are evidenced indirectly by the risk decreasing with n in "
      "criteria 1-2 and by the adaptive selections tracking the admissible grids.\n");

  return all ? 0 : 1;
}
