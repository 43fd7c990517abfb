#ifndef EMTK_RANDOM_HPP
#define EMTK_RANDOM_HPP

#include <cstdint>
#include <random>

namespace emtk {

// Uniform double in [0,1) from the top 53 bits of the engine output.
// std::uniform_real_distribution is implementation-defined, so golden tests
// draw through this instead.
inline double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline std::mt19937_64 seeded_rng(std::uint64_t seed) {
    return std::mt19937_64(seed);
}

}  // namespace emtk

#endif
