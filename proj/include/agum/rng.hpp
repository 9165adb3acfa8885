/// @file rng.hpp
/// @brief Seedable, splittable 64-bit generator used by every sampler.
#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace agum {

/// Thin wrapper around std::mt19937_64. Child streams are derived by hashing
/// (seed, index) through SplitMix64, so replicas never share state.
class Rng {
public:
    using result_type = std::uint64_t;
    static constexpr std::string_view algorithm = "mt19937_64/splitmix64";

    explicit Rng(std::uint64_t seed) : seed_(seed), engine_(mix(seed)) {}

    std::uint64_t seed() const noexcept { return seed_; }
    Rng split(std::uint64_t index) const { return Rng(mix(seed_ ^ mix(index + 0x632be59bd9b4e019ULL))); }

    static constexpr result_type min() { return std::mt19937_64::min(); }
    static constexpr result_type max() { return std::mt19937_64::max(); }
    result_type operator()() { return engine_(); }

    double uniform() { return std::uniform_real_distribution<double>(0.0, 1.0)(engine_); }
    double normal(double stddev) { return std::normal_distribution<double>(0.0, stddev)(engine_); }
    double exponential() { return std::exponential_distribution<double>(1.0)(engine_); }

    static constexpr std::uint64_t mix(std::uint64_t z) {
        z += 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

private:
    std::uint64_t seed_;
    std::mt19937_64 engine_;
};

}  // namespace agum
