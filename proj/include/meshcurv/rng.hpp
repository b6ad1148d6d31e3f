#pragma once

#include <cstdint>
#include <random>

namespace meshcurv {

/// splitmix64 finalizer; spreads correlated seeds far apart.
inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Key for the (stream, index) substream of a master seed. Substreams are
/// independent of each other and of execution order.
inline std::uint64_t substream_key(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
    return mix64(mix64(mix64(seed) ^ stream) ^ index);
}

inline std::mt19937_64 make_rng(std::uint64_t key) {
    return std::mt19937_64(key);
}

/// Uniform double in [lo, hi). Hand-rolled mapping instead of
/// std::uniform_real_distribution: the engine is consumed exactly once per
/// draw, so streams stay aligned across standard library implementations.
inline double uniform_real(std::mt19937_64& rng, double lo, double hi) {
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    return lo + u * (hi - lo);
}

/// Uniform integer in [lo, hi], inclusive. Modulo bias is irrelevant for the
/// tiny spans used here; one engine call per draw.
inline int uniform_int(std::mt19937_64& rng, int lo, int hi) {
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<int>(rng() % span);
}

}  // namespace meshcurv
