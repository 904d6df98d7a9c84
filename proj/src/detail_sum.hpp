#ifndef CIRCREG_SRC_DETAIL_SUM_HPP
#define CIRCREG_SRC_DETAIL_SUM_HPP

#include <cstddef>
#include <span>

namespace circreg::detail {

/// Pairwise (cascade) summation: O(log n) rounding-error growth instead of
/// O(n) for left-to-right accumulation. Deterministic for a fixed input.
template <class T>
T pairwise_sum(std::span<const T> values) {
  const std::size_t n = values.size();
  if (n <= 8) {
    T acc{};
    for (const T& v : values) acc += v;
    return acc;
  }
  const std::size_t half = n / 2;
  return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

}  // namespace circreg::detail

#endif  // CIRCREG_SRC_DETAIL_SUM_HPP
