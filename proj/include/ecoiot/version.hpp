#pragma once

#include <string_view>

namespace ecoiot {

inline constexpr std::string_view kToolName = "ecoiot";
inline constexpr std::string_view kToolVersion = "0.1.0";

}  // namespace ecoiot
