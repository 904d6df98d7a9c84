#include "circreg/common.hpp"

#include <cassert>
#include <cmath>

namespace circreg {

TrigWeights::TrigWeights(const std::vector<Angle>& responses) {
  sin_.reserve(responses.size());
  cos_.reserve(responses.size());
  for (const Angle& a : responses) {
    const double s = std::sin(a.radians());
    const double c = std::cos(a.radians());
    assert(std::abs(s * s + c * c - 1.0) <= 1e-12);
    sin_.push_back(s);
    cos_.push_back(c);
  }
}

}  // namespace circreg
