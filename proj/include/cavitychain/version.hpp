#pragma once

namespace cavitychain {

inline constexpr const char* k_version = "0.1.0";

}  // namespace cavitychain
