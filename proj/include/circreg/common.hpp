#ifndef CIRCREG_COMMON_HPP
#define CIRCREG_COMMON_HPP

#include <cstddef>
#include <vector>

#include "circreg/angle.hpp"

namespace circreg {

/// Which trigonometric component of the response an estimator targets.
/// The regression direction is recovered as atan2(sine part, cosine part).
enum class TrigComponent { Sine, Cosine };

/// How the smoothing parameter is chosen.
///  - Adaptive: data-driven Goldenshluger-Lepski comparison, for noise with
///    polynomially decaying characteristic function (ordinary smooth).
///  - PlugIn: deterministic rate-optimal formula, for noise with
///    exponentially decaying characteristic function (supersmooth).
enum class SelectionMode { Adaptive, PlugIn };

/// Deconvolution kernel for the linear-covariate pipeline. Only the sinc
/// kernel ships; its Fourier transform is the indicator of [-1, 1].
enum class DeconvKernel { Sinc };

/// Tuning knobs shared by both estimator pipelines.
/// c0 constants are required (strictly positive) in Adaptive mode and
/// ignored in PlugIn mode, where the smoothness parameters of the noise
/// model drive the choice instead.
struct EstimatorConfig {
  SelectionMode mode = SelectionMode::Adaptive;
  double c0_sine = 0.0;
  double c0_cosine = 0.0;
  DeconvKernel kernel = DeconvKernel::Sinc;
};

/// Precomputed sin/cos response weights. sin^2 + cos^2 = 1 up to rounding
/// for every entry since both come from the same angle.
class TrigWeights {
 public:
  explicit TrigWeights(const std::vector<Angle>& responses);

  [[nodiscard]] const std::vector<double>& sines() const noexcept { return sin_; }
  [[nodiscard]] const std::vector<double>& cosines() const noexcept { return cos_; }
  [[nodiscard]] const std::vector<double>& component(TrigComponent c) const noexcept {
    return c == TrigComponent::Sine ? sin_ : cos_;
  }
  [[nodiscard]] std::size_t size() const noexcept { return sin_.size(); }

 private:
  std::vector<double> sin_;
  std::vector<double> cos_;
};

}  // namespace circreg

#endif  // CIRCREG_COMMON_HPP
