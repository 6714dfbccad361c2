#pragma once

#include "hz/report/config.hpp"
#include "hz/report/document.hpp"

namespace hz::report {

inline constexpr const char* kVersion = "0.1.0";

// Exit-code contract: 0 all checks pass, 1 a mathematical check failed,
// 2 configuration error, 3 numerical failure.
inline constexpr int kExitPass = 0;
inline constexpr int kExitMathFail = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitNumerical = 3;

// Deterministic given the config (including seed and thread count).
ReportDocument run_scenario(const RunConfig& config);

}  // namespace hz::report
