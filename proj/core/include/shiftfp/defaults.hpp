#pragma once

#include <cstddef>

namespace shiftfp::defaults {

inline constexpr int kNInt = 50;
/// Largest distance the default hybrid sampler can realise: N_int + (N_int - 1) < 2 N_int + 1.
inline constexpr double kRange = 2.0 * kNInt + 1.0;

inline constexpr double kTol = 1e-9;
inline constexpr std::size_t kGridSize = 10000;
inline constexpr double kBreakpointOffset = 1e-6;
/// Side of the deterministic square grid used by the condition (i) checker.
inline constexpr std::size_t kConditionIGrid = 257;

inline constexpr std::size_t kSamples = 100000;
inline constexpr std::size_t kClosureSamples = 10000;
inline constexpr std::size_t kSearchBudget = 100000;

inline constexpr double kTolFix = 1e-12;
inline constexpr std::size_t kMaxIter = 10000;
inline constexpr double kMonotoneTol = 1e-12;
inline constexpr double kDivergenceFactor = 1e6;
inline constexpr double kTolUnique = 1e-9;
inline constexpr std::size_t kStarts = 10;

}  // namespace shiftfp::defaults
