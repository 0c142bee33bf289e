#pragma once

#include <bit>
#include <cstdint>
#include <random>

#include "mamc/date.hpp"

namespace mamc::rng {

// Substream derivation. Every simulation consumer derives its seed by
// folding identifying integers into a parent seed with splitmix64, so paths
// (and backtest tasks) are independent of execution order, worker count, and
// of which other consumers exist.
//
// Normal variates come from std::normal_distribution<double> over
// std::mt19937_64, one engine per substream. The variate algorithm is fixed
// per implementation (bit-identical results on one toolchain); agreement
// across standard libraries is statistical only.

constexpr std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

constexpr std::uint64_t mix(std::uint64_t seed, std::uint64_t value) {
    return splitmix64(seed ^ splitmix64(value));
}

inline std::uint64_t mix(std::uint64_t seed, double value) {
    return mix(seed, std::bit_cast<std::uint64_t>(value));
}

inline std::uint64_t mix(std::uint64_t seed, Date date) {
    return mix(seed, static_cast<std::uint64_t>(date.serial()));
}

// Per-path substream: fresh engine and distribution so no generator state
// leaks between paths.
class NormalStream {
public:
    explicit NormalStream(std::uint64_t seed) : engine_(seed) {}

    double operator()() { return normal_(engine_); }

private:
    std::mt19937_64 engine_;
    std::normal_distribution<double> normal_{0.0, 1.0};
};

}  // namespace mamc::rng
