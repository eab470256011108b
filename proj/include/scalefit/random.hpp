#pragma once

// Reproducible random streams. The engine (mt19937_64) and the seeding
// algorithm (std::seed_seq) are both fully specified by the C++ standard; the
// conversions below avoid the implementation-defined standard distributions,
// so a given (seed, stream) yields the same numbers on every platform.

#include <cstdint>
#include <random>
#include <utility>

namespace scalefit {

class Rng {
public:
    /// Stream `stream` of master seed `seed`. Distinct streams are
    /// statistically independent.
    explicit Rng(std::uint64_t seed, std::uint64_t stream = 0) {
        std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                          static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
        engine_.seed(seq);
    }

    std::uint64_t next() { return engine_(); }

    /// Uniform in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Uniform integer in [0, bound) by rejection; bound > 0.
    std::uint64_t below(std::uint64_t bound) {
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
        std::uint64_t x = engine_();
        while (x >= limit) x = engine_();
        return x % bound;
    }

    /// Fisher-Yates shuffle.
    template <typename Range>
    void shuffle(Range& range) {
        const auto size = static_cast<std::uint64_t>(std::size(range));
        for (std::uint64_t i = size; i > 1; --i) {
            const std::uint64_t j = below(i);
            using std::swap;
            swap(range[i - 1], range[j]);
        }
    }

private:
    std::mt19937_64 engine_;
};

/// Stream tags keep the fitter, fold assignment and noise generation from
/// sharing random numbers when they share a master seed.
namespace streams {
inline constexpr std::uint64_t fold_assignment = 0x666f6c64ULL << 32;
inline constexpr std::uint64_t synthetic_noise = 0x6e6f6973ULL << 32;
inline constexpr std::uint64_t fit_restart = 0x72737472ULL << 32;
}  // namespace streams

}  // namespace scalefit
