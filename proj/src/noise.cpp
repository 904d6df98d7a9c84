#include "circreg/noise.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "circreg/angle.hpp"
#include "circreg/errors.hpp"
#include "detail_format.hpp"
#include "detail_quadrature.hpp"

namespace circreg {

namespace {

void require(bool ok, const char* message) {
  if (!ok) throw std::invalid_argument(message);
}

void check_unit_at_zero(const std::complex<double>& at_zero) {
  if (std::abs(at_zero - std::complex<double>(1.0, 0.0)) > 1e-9) {
    throw std::invalid_argument("noise characteristic function must equal 1 at frequency 0");
  }
}

/// Partial sums of sum_{l in Z} |cf(l)| for custom circular models. Stops
/// after a sustained run of negligible terms; a model decaying too slowly to
/// certify a < 1e-10 tail within the frequency cap is rejected.
double custom_ell1_norm(const CircularNoiseModel::CfFn& cf) {
  constexpr long kMaxFrequency = 5'000'000;
  constexpr int kRunLength = 8;
  double acc = std::abs(cf(0));
  int small_run = 0;
  for (long l = 1; l <= kMaxFrequency; ++l) {
    const double term = 2.0 * std::abs(cf(l));
    acc += term;
    small_run = (term < 1e-12 * std::max(acc, 1.0)) ? small_run + 1 : 0;
    if (small_run >= kRunLength && l >= 32) return acc;
  }
  throw NumericalError("circular noise ell-1 norm did not converge");
}

double custom_l1_norm(const LinearNoiseModel::CfFn& cf) {
  const auto integrand = [&cf](double t) { return std::abs(cf(t)); };
  return 2.0 * detail::integrate(integrand, 0.0,
                                 std::numeric_limits<double>::infinity(), 1e-8,
                                 "linear noise L1 norm");
}

}  // namespace

CircularNoiseModel CircularNoiseModel::none() {
  CircularNoiseModel m;
  m.kind_ = Kind::None;
  m.smoothness_ = {SmoothnessClass::OrdinarySmooth, 0.0, 0.0, 0.0};
  m.ell1_ = 1.0;  // truncated-grid convention for the divergent sum
  return m;
}

CircularNoiseModel CircularNoiseModel::wrapped_laplace(double lambda) {
  require(std::isfinite(lambda) && lambda > 0.0, "wrapped_laplace: lambda must be positive");
  CircularNoiseModel m;
  m.kind_ = Kind::WrappedLaplace;
  m.lambda_ = lambda;
  m.smoothness_ = {SmoothnessClass::OrdinarySmooth, 2.0, 0.0, 0.0};
  // sum_{l in Z} lambda^2 / (l^2 + lambda^2) = pi lambda coth(pi lambda)
  m.ell1_ = kPi * lambda / std::tanh(kPi * lambda);
  return m;
}

CircularNoiseModel CircularNoiseModel::custom_ordinary(double order, CfFn cf) {
  require(std::isfinite(order) && order > 1.0,
          "custom circular noise: polynomial decay order must exceed 1 for summability");
  require(static_cast<bool>(cf), "custom circular noise: null characteristic function");
  check_unit_at_zero(cf(0));
  CircularNoiseModel m;
  m.kind_ = Kind::Custom;
  m.custom_ = std::move(cf);
  m.smoothness_ = {SmoothnessClass::OrdinarySmooth, order, 0.0, 0.0};
  m.ell1_ = custom_ell1_norm(m.custom_);
  return m;
}

CircularNoiseModel CircularNoiseModel::custom_super(double decay_rate, double decay_power,
                                                    CfFn cf) {
  require(std::isfinite(decay_rate) && decay_rate > 0.0,
          "custom circular noise: decay rate must be positive");
  require(std::isfinite(decay_power) && decay_power > 0.0,
          "custom circular noise: decay power must be positive");
  require(static_cast<bool>(cf), "custom circular noise: null characteristic function");
  check_unit_at_zero(cf(0));
  CircularNoiseModel m;
  m.kind_ = Kind::Custom;
  m.custom_ = std::move(cf);
  m.smoothness_ = {SmoothnessClass::SuperSmooth, 0.0, decay_rate, decay_power};
  m.ell1_ = custom_ell1_norm(m.custom_);
  return m;
}

std::complex<double> CircularNoiseModel::cf(long l) const {
  if (l < 0) return std::conj(cf(-l));
  switch (kind_) {
    case Kind::None:
      return {1.0, 0.0};
    case Kind::WrappedLaplace: {
      const double ll = static_cast<double>(l);
      return {lambda_ * lambda_ / (ll * ll + lambda_ * lambda_), 0.0};
    }
    case Kind::Custom:
      return custom_(l);
  }
  return {1.0, 0.0};  // unreachable
}

double CircularNoiseModel::cf_abs(long l) const { return std::abs(cf(l)); }

std::string CircularNoiseModel::spec_string() const {
  switch (kind_) {
    case Kind::None:
      return "none";
    case Kind::WrappedLaplace:
      return "wrapped_laplace:" + detail::format_double(lambda_);
    case Kind::Custom:
      break;
  }
  if (smoothness_.cls == SmoothnessClass::OrdinarySmooth) {
    return "custom_ordinary(order=" + detail::format_double(smoothness_.order) + ")";
  }
  return "custom_super(rate=" + detail::format_double(smoothness_.decay_rate) +
         ",power=" + detail::format_double(smoothness_.decay_power) + ")";
}

LinearNoiseModel LinearNoiseModel::none() {
  LinearNoiseModel m;
  m.kind_ = Kind::None;
  m.smoothness_ = {SmoothnessClass::OrdinarySmooth, 0.0, 0.0, 0.0};
  m.l1_ = std::numeric_limits<double>::infinity();
  return m;
}

LinearNoiseModel LinearNoiseModel::laplace(double sigma) {
  require(std::isfinite(sigma) && sigma > 0.0, "laplace: sigma must be positive");
  LinearNoiseModel m;
  m.kind_ = Kind::Laplace;
  m.scale_ = sigma;
  m.smoothness_ = {SmoothnessClass::OrdinarySmooth, 2.0, 0.0, 0.0};
  m.l1_ = kPi / sigma;  // integral of 1/(1 + sigma^2 t^2)
  return m;
}

LinearNoiseModel LinearNoiseModel::gaussian(double sigma) {
  require(std::isfinite(sigma) && sigma > 0.0, "gaussian: sigma must be positive");
  LinearNoiseModel m;
  m.kind_ = Kind::Gaussian;
  m.scale_ = sigma;
  m.smoothness_ = {SmoothnessClass::SuperSmooth, 0.0, sigma * sigma / 2.0, 2.0};
  m.l1_ = std::sqrt(2.0 * kPi) / sigma;  // integral of exp(-sigma^2 t^2 / 2)
  return m;
}

LinearNoiseModel LinearNoiseModel::custom_ordinary(double order, CfFn cf) {
  require(std::isfinite(order) && order > 1.0,
          "custom linear noise: polynomial decay order must exceed 1 for integrability");
  require(static_cast<bool>(cf), "custom linear noise: null characteristic function");
  check_unit_at_zero(cf(0.0));
  LinearNoiseModel m;
  m.kind_ = Kind::Custom;
  m.custom_ = std::move(cf);
  m.smoothness_ = {SmoothnessClass::OrdinarySmooth, order, 0.0, 0.0};
  m.l1_ = custom_l1_norm(m.custom_);
  return m;
}

LinearNoiseModel LinearNoiseModel::custom_super(double decay_rate, double decay_power,
                                                CfFn cf) {
  require(std::isfinite(decay_rate) && decay_rate > 0.0,
          "custom linear noise: decay rate must be positive");
  require(std::isfinite(decay_power) && decay_power > 0.0,
          "custom linear noise: decay power must be positive");
  require(static_cast<bool>(cf), "custom linear noise: null characteristic function");
  check_unit_at_zero(cf(0.0));
  LinearNoiseModel m;
  m.kind_ = Kind::Custom;
  m.custom_ = std::move(cf);
  m.smoothness_ = {SmoothnessClass::SuperSmooth, 0.0, decay_rate, decay_power};
  m.l1_ = custom_l1_norm(m.custom_);
  return m;
}

std::complex<double> LinearNoiseModel::cf(double t) const {
  if (std::isnan(t)) throw std::invalid_argument("cf: NaN frequency");
  if (t < 0.0) return std::conj(cf(-t));
  switch (kind_) {
    case Kind::None:
      return {1.0, 0.0};
    case Kind::Laplace:
      return {1.0 / (1.0 + scale_ * scale_ * t * t), 0.0};
    case Kind::Gaussian:
      return {std::exp(-scale_ * scale_ * t * t / 2.0), 0.0};
    case Kind::Custom:
      return custom_(t);
  }
  return {1.0, 0.0};  // unreachable
}

double LinearNoiseModel::cf_abs(double t) const { return std::abs(cf(t)); }

std::string LinearNoiseModel::spec_string() const {
  switch (kind_) {
    case Kind::None:
      return "none";
    case Kind::Laplace:
      return "laplace:" + detail::format_double(scale_);
    case Kind::Gaussian:
      return "gaussian:" + detail::format_double(scale_);
    case Kind::Custom:
      break;
  }
  if (smoothness_.cls == SmoothnessClass::OrdinarySmooth) {
    return "custom_ordinary(order=" + detail::format_double(smoothness_.order) + ")";
  }
  return "custom_super(rate=" + detail::format_double(smoothness_.decay_rate) +
         ",power=" + detail::format_double(smoothness_.decay_power) + ")";
}

namespace {

double parse_positive_parameter(std::string_view spec, std::string_view name,
                                std::string_view text) {
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(std::string(text), &used);
  } catch (const std::exception&) {
    throw std::invalid_argument("noise spec '" + std::string(spec) + "': bad " +
                                std::string(name) + " parameter");
  }
  if (used != text.size() || !std::isfinite(value) || value <= 0.0) {
    throw std::invalid_argument("noise spec '" + std::string(spec) + "': bad " +
                                std::string(name) + " parameter");
  }
  return value;
}

}  // namespace

CircularNoiseModel parse_circular_noise(std::string_view spec) {
  if (spec == "none") return CircularNoiseModel::none();
  const auto colon = spec.find(':');
  const std::string_view name = spec.substr(0, colon);
  if (name == "wrapped_laplace" && colon != std::string_view::npos) {
    return CircularNoiseModel::wrapped_laplace(
        parse_positive_parameter(spec, "lambda", spec.substr(colon + 1)));
  }
  throw std::invalid_argument("unknown circular noise spec '" + std::string(spec) +
                              "' (expected wrapped_laplace:<lambda> or none)");
}

LinearNoiseModel parse_linear_noise(std::string_view spec) {
  if (spec == "none") return LinearNoiseModel::none();
  const auto colon = spec.find(':');
  const std::string_view name = spec.substr(0, colon);
  if (colon != std::string_view::npos) {
    if (name == "laplace") {
      return LinearNoiseModel::laplace(
          parse_positive_parameter(spec, "sigma", spec.substr(colon + 1)));
    }
    if (name == "gaussian") {
      return LinearNoiseModel::gaussian(
          parse_positive_parameter(spec, "sigma", spec.substr(colon + 1)));
    }
  }
  throw std::invalid_argument("unknown linear noise spec '" + std::string(spec) +
                              "' (expected laplace:<sigma>, gaussian:<sigma> or none)");
}

}  // namespace circreg
