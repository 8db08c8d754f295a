#pragma once

namespace gea {

inline constexpr const char* kToolName = "gea";
inline constexpr const char* kToolVersion = "0.1.0";

}  // namespace gea
