#pragma once

#include <cmath>
#include <cstdint>

// Counter-based generator: every variate is a pure function of
// (seed, stream, index, draw). Trials can be partitioned across workers in any
// way without changing a single bit of the output.
namespace grcim::rng {

constexpr std::uint64_t kStreamX = 0x11;
constexpr std::uint64_t kStreamW = 0x22;
constexpr std::uint64_t kStreamJitter = 0x33;
constexpr std::uint64_t kStreamAdc = 0x44;

// splitmix64 finalizer
inline std::uint64_t mix(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

// Uniform in [0, 1).
inline double u01(std::uint64_t seed, std::uint64_t stream, std::uint64_t index,
                  std::uint64_t draw = 0) {
    std::uint64_t h = mix(seed);
    h = mix(h ^ mix(stream));
    h = mix(h ^ mix(index));
    h = mix(h ^ draw);
    return double(h >> 11) * 0x1.0p-53;
}

inline double uniform(double a, double b, std::uint64_t seed,
                      std::uint64_t stream, std::uint64_t index,
                      std::uint64_t draw = 0) {
    return a + (b - a) * u01(seed, stream, index, draw);
}

// Standard normal via Box-Muller; consumes draw slots 2*draw and 2*draw+1.
inline double normal(std::uint64_t seed, std::uint64_t stream,
                     std::uint64_t index, std::uint64_t draw = 0) {
    double u1 = u01(seed, stream, index, 2 * draw);
    double u2 = u01(seed, stream, index, 2 * draw + 1);
    // guard log(0)
    if (u1 <= 0.0) u1 = 0x1.0p-53;
    double r = std::sqrt(-2.0 * std::log(u1));
    return r * std::cos(6.283185307179586 * u2);
}

}  // namespace grcim::rng
