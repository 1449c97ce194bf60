#pragma once

namespace sgbench {

inline constexpr const char* kToolVersion = "0.1.0";

// Bumped whenever generated bytes may change for the same config.
inline constexpr int kGeneratorVersion = 1;
inline constexpr int kRngVersion = 1;

}  // namespace sgbench
