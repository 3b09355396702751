#pragma once

#include <cstdint>
#include <random>
#include <span>

namespace focus {

/// Engine used by every walk and sampler. Seeded explicitly; never from the clock.
using Rng = std::mt19937_64;

/// splitmix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Sub-seed for stream `index` of a run seeded with `seed`. Pure function of both,
/// so trial i sees the same stream no matter how trials are scheduled.
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) noexcept
{
    return mix64(mix64(seed) ^ mix64(index + 0x632be59bd9b4e019ULL));
}

// The std distributions are implementation-defined; these two are not, which keeps
// seeded output identical across standard libraries.

/// Uniform double in [0, 1) from the top 53 bits.
inline double uniform01(Rng& rng)
{
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Uniform integer in [0, bound). bound must be positive.
inline std::uint64_t uniform_below(Rng& rng, std::uint64_t bound)
{
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
    std::uint64_t x;
    do {
        x = rng();
    } while (x >= limit);
    return x % bound;
}

/// Index drawn with probability proportional to weights[i]. Weights must be
/// nonnegative with a positive total.
inline std::size_t sample_index(Rng& rng, std::span<const double> weights)
{
    double total = 0.0;
    for (double w : weights)
        total += w;
    const double u = uniform01(rng) * total;
    double acc = 0.0;
    std::size_t last = 0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        if (weights[i] <= 0.0)
            continue;
        acc += weights[i];
        last = i;
        if (u < acc)
            return i;
    }
    return last;
}

} // namespace focus
