#pragma once

#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <random>
#include <vector>

// Seeded randomness helpers. Every stochastic routine in the library takes a
// 64-bit seed and derives an independent stream per unit of work (bootstrap
// run, bin, synthetic user), so results do not depend on execution order or
// worker count. Distribution sampling is hand-rolled on top of mt19937_64
// because std:: distributions are not bit-stable across standard libraries.

namespace parksent::rng {

inline constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += kGolden;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

/// Derive a stream seed from a master seed and a salt chain
/// (e.g. {kStreamBootstrap, run_index}).
inline std::uint64_t stream_seed(std::uint64_t seed, std::initializer_list<std::uint64_t> salts) {
    std::uint64_t h = seed;
    for (std::uint64_t s : salts) h = splitmix64(h ^ (kGolden * (s + 1)));
    return h;
}

// Stream tags, one per stochastic subsystem.
inline constexpr std::uint64_t kStreamBootstrap = 1;
inline constexpr std::uint64_t kStreamCurve = 2;
inline constexpr std::uint64_t kStreamDuration = 3;
inline constexpr std::uint64_t kStreamSynth = 4;

inline std::uint64_t bin_salt(int bin) {
    return static_cast<std::uint64_t>(static_cast<std::int64_t>(bin) + (1ll << 32));
}

using Engine = std::mt19937_64;

inline Engine make_engine(std::uint64_t seed, std::initializer_list<std::uint64_t> salts) {
    return Engine(stream_seed(seed, salts));
}

/// Unbiased uniform draw in [0, n) by rejection.
inline std::uint64_t uniform_below(Engine& eng, std::uint64_t n) {
    if (n <= 1) return 0;
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t v;
    do {
        v = eng();
    } while (v >= limit);
    return v % n;
}

/// Uniform integer in [lo, hi], inclusive.
inline std::int64_t uniform_int(Engine& eng, std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(uniform_below(eng, static_cast<std::uint64_t>(hi - lo + 1)));
}

/// Uniform double in [0, 1) with 53 random bits.
inline double uniform01(Engine& eng) {
    return static_cast<double>(eng() >> 11) * 0x1.0p-53;
}

/// Knuth product-of-uniforms Poisson sampler; adequate for the small rates
/// used by message schedules.
inline std::uint32_t poisson(Engine& eng, double mean) {
    if (mean <= 0.0) return 0;
    const double limit = std::exp(-mean);
    double prod = 1.0;
    std::uint32_t k = 0;
    for (;;) {
        prod *= uniform01(eng);
        if (prod <= limit) return k;
        ++k;
    }
}

/// First k entries of a random permutation of [0, n): a without-replacement
/// index sample via partial Fisher–Yates.
inline std::vector<std::uint32_t> sample_without_replacement(Engine& eng, std::uint32_t n, std::uint32_t k) {
    std::vector<std::uint32_t> idx(n);
    for (std::uint32_t i = 0; i < n; ++i) idx[i] = i;
    if (k > n) k = n;
    for (std::uint32_t i = 0; i < k; ++i) {
        const std::uint32_t j = i + static_cast<std::uint32_t>(uniform_below(eng, n - i));
        std::swap(idx[i], idx[j]);
    }
    idx.resize(k);
    return idx;
}

}  // namespace parksent::rng
