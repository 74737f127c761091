#pragma once

#include <cstddef>

namespace cmm {

/// Kernel execution selector. Auto switches to the OpenMP path once the
/// packed input is large enough that thread startup pays for itself.
enum class Execution { kAuto, kSerial, kParallel };

/// Minimum number of 64-bit words before Auto picks the parallel path.
inline constexpr std::size_t kParallelWordThreshold = 1u << 14;

inline bool use_parallel(Execution exec, std::size_t word_count) {
    if (exec == Execution::kSerial) return false;
    if (exec == Execution::kParallel) return true;
    return word_count >= kParallelWordThreshold;
}

}  // namespace cmm
