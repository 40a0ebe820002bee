#pragma once

#include <string_view>

namespace lyclamp {
inline constexpr std::string_view kVersion = "0.1.0";
}
