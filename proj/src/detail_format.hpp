#ifndef CIRCREG_SRC_DETAIL_FORMAT_HPP
#define CIRCREG_SRC_DETAIL_FORMAT_HPP

#include <charconv>
#include <string>
#include <system_error>

namespace circreg::detail {

/// Shortest decimal string that round-trips the double (std::to_chars).
/// Deterministic, locale-independent.
inline std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return (ec == std::errc()) ? std::string(buf, ptr) : std::string("nan");
}

}  // namespace circreg::detail

#endif  // CIRCREG_SRC_DETAIL_FORMAT_HPP
