#pragma once

#include <cstdint>

namespace zxzxz {

/// Stateless counter-based generator. Each (seed, index, stream) triple maps
/// to one 64-bit word, so sampling is reproducible and order-independent
/// under any parallel schedule.
inline std::uint64_t counter_hash(std::uint64_t seed, std::uint64_t index,
                                  std::uint64_t stream = 0) {
    std::uint64_t z = seed ^ (index * 0x9E3779B97F4A7C15ULL) ^
                      (stream * 0xD1B54A32D192ED03ULL);
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// Uniform double in [0, 1) from the top 53 bits of the counter hash.
inline double counter_uniform(std::uint64_t seed, std::uint64_t index,
                              std::uint64_t stream = 0) {
    return static_cast<double>(counter_hash(seed, index, stream) >> 11) *
           0x1.0p-53;
}

} // namespace zxzxz
