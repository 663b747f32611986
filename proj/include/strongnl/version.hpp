#pragma once

namespace strongnl {

inline constexpr const char* kToolName = "strongnl";
inline constexpr const char* kToolVersion = "1.0.0";

}  // namespace strongnl
