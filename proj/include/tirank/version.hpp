#pragma once

namespace tirank {

inline constexpr const char* kToolName = "tirank";
inline constexpr const char* kVersion = "0.1.0";

}  // namespace tirank
