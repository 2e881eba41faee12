#pragma once

#include <string_view>

namespace qas {

inline constexpr std::string_view kVersion = "qas 0.1.0";

}  // namespace qas
