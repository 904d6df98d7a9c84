#include "circreg/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace circreg {

namespace {

void require(bool ok, const char* message) {
  if (!ok) throw std::invalid_argument(message);
}

}  // namespace

SeededRng::SeededRng(std::uint64_t seed, std::uint64_t stream)
    : seed_(seed), stream_(stream) {
  // seed_seq output is fully specified, so the engine state (and hence the
  // whole draw sequence) is identical across platforms.
  std::seed_seq seq{static_cast<std::uint32_t>(seed & 0xffffffffu),
                    static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream & 0xffffffffu),
                    static_cast<std::uint32_t>(stream >> 32)};
  engine_.seed(seq);
}

std::uint64_t SeededRng::next_u64() { return engine_(); }

double SeededRng::uniform01() {
  // 53 random bits offset by half an ulp: values lie strictly inside (0, 1).
  return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

double SeededRng::uniform(double lo, double hi) {
  require(lo < hi && std::isfinite(lo) && std::isfinite(hi),
          "uniform: bounds must be finite with lo < hi");
  return lo + (hi - lo) * uniform01();
}

double SeededRng::gaussian(double sigma) {
  require(std::isfinite(sigma) && sigma > 0.0, "gaussian: sigma must be positive");
  if (has_spare_) {
    has_spare_ = false;
    return sigma * spare_gaussian_;
  }
  const double u1 = uniform01();
  const double u2 = uniform01();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  spare_gaussian_ = radius * std::sin(kTwoPi * u2);
  has_spare_ = true;
  return sigma * radius * std::cos(kTwoPi * u2);
}

double SeededRng::laplace(double sigma) {
  require(std::isfinite(sigma) && sigma > 0.0, "laplace: sigma must be positive");
  const double u = uniform01();
  return (u < 0.5) ? sigma * std::log(2.0 * u) : -sigma * std::log(2.0 * (1.0 - u));
}

VonMisesSampler::VonMisesSampler(Angle mu, double kappa) : mu_(mu), kappa_(kappa) {
  require(std::isfinite(kappa) && kappa > 0.0,
          "von Mises: concentration must be positive");
  // Wrapped-Cauchy envelope parameter, written without the cancellation the
  // textbook (tau - sqrt(2 tau)) / (2 kappa) form suffers for small kappa.
  const double s = std::sqrt(1.0 + 4.0 * kappa * kappa);
  const double tau = 1.0 + s;
  const double rho = 2.0 * kappa * tau / ((s + 1.0) * (tau + std::sqrt(2.0 * tau)));
  envelope_r_ = (1.0 + rho * rho) / (2.0 * rho);
}

Angle VonMisesSampler::draw(SeededRng& rng) {
  const double r = envelope_r_;
  double f = 0.0;
  for (;;) {
    ++proposals_;
    const double z = std::cos(kPi * rng.uniform01());
    f = (1.0 + r * z) / (r + z);
    const double c = kappa_ * (r - f);
    const double u2 = rng.uniform01();
    if (c * (2.0 - c) - u2 > 0.0 || std::log(c / u2) + 1.0 - c >= 0.0) break;
  }
  ++accepted_;
  const double u3 = rng.uniform01();
  const double offset = (u3 > 0.5 ? 1.0 : -1.0) * std::acos(std::clamp(f, -1.0, 1.0));
  return Angle::wrap(mu_.radians() + offset);
}

Angle sample_von_mises(SeededRng& rng, Angle mu, double kappa) {
  VonMisesSampler sampler(mu, kappa);
  return sampler.draw(rng);
}

Angle sample_wrapped_laplace(SeededRng& rng, double lambda) {
  require(std::isfinite(lambda) && lambda > 0.0,
          "wrapped Laplace: rate must be positive");
  return Angle::wrap(rng.laplace(1.0 / lambda));
}

}  // namespace circreg
