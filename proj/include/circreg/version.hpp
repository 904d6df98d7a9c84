#ifndef CIRCREG_VERSION_HPP
#define CIRCREG_VERSION_HPP

#include <string_view>

namespace circreg {

inline constexpr std::string_view kToolName = "circreg";
inline constexpr std::string_view kVersion = "1.0.0";

}  // namespace circreg

#endif  // CIRCREG_VERSION_HPP
