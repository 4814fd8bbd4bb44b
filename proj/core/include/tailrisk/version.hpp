#pragma once

namespace tailrisk {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace tailrisk
