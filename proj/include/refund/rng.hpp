// SplitMix64 pseudo-random generator.
//
// Chosen because it is tiny, fast, named, and identically implemented across
// languages, which makes every seeded artifact of this library reproducible
// bit-for-bit by an independent implementation. Stream splitting: the k-th
// derived stream of a seed is SplitMix64 seeded with mix64(seed + k * GAMMA),
// i.e. one generator step applied to a distinct affine offset. Simulation
// trials and generator draws both use this rule (see simulate.cpp).

#pragma once

#include <gmpxx.h>

#include <cstdint>

namespace refund {

inline constexpr std::uint64_t kSplitMixGamma = 0x9E3779B97F4A7C15ULL;

// One SplitMix64 output step applied to x (stateless finalizer).
inline std::uint64_t mix64(std::uint64_t x) {
    x += kSplitMixGamma;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

class SplitMix64 {
  public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    // The k-th independent substream of a seed.
    static SplitMix64 stream(std::uint64_t seed, std::uint64_t k) {
        return SplitMix64(mix64(seed + k * kSplitMixGamma));
    }

    std::uint64_t next() {
        state_ += kSplitMixGamma;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // Uniform draw from [0, bound) by rejection; bound must be positive.
    std::uint64_t below(std::uint64_t bound) {
        const std::uint64_t limit = bound * (~0ULL / bound);
        std::uint64_t x;
        do {
            x = next();
        } while (x >= limit);
        return x % bound;
    }

    // Uniform draw from [0, bound) for an arbitrary-precision bound, by
    // assembling bit-length-limited candidates and rejecting overshoots.
    mpz_class below(const mpz_class& bound) {
        if (bound <= 0) return 0;
        if (bound.fits_ulong_p())
            return mpz_class(static_cast<unsigned long>(below(std::uint64_t(bound.get_ui()))));
        const std::size_t bits = mpz_sizeinbase(bound.get_mpz_t(), 2);
        mpz_class x;
        do {
            x = 0;
            for (std::size_t got = 0; got < bits; got += 64) {
                x <<= 64;
                x += static_cast<unsigned long>(next());
            }
            // Drop the surplus bits of the last 64-bit block.
            x >>= (64 - bits % 64) % 64;
        } while (x >= bound);
        return x;
    }

  private:
    std::uint64_t state_;
};

}  // namespace refund
