#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace shiftfp {

using Rng = std::mt19937_64;

/// Child seed for a named stream. Every consumer of randomness derives its
/// own stream from the root seed, so adding a stream never shifts another
/// stream's samples.
std::uint64_t derive_seed(std::uint64_t root, std::string_view stream) noexcept;

inline Rng make_rng(std::uint64_t root, std::string_view stream) {
    return Rng(derive_seed(root, stream));
}

}  // namespace shiftfp
