#pragma once

#include <bit>
#include <cmath>
#include <cstdint>
#include <random>

namespace mocu {

/// splitmix64 finalizer; used for seed mixing and stream derivation.
inline std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

/// Combine a seed with one or more stream tags (order-sensitive).
inline std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) {
    return mix64(mix64(a) ^ (b + 0x9e3779b97f4a7c15ull));
}
inline std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b, std::uint64_t c) {
    return mix_seed(mix_seed(a, b), c);
}

/**
 * Seeded random stream with portable variate generation.
 *
 * The engine is std::mt19937_64, whose output sequence is fully specified by
 * the standard; uniform and exponential variates are produced from raw 64-bit
 * draws rather than std:: distributions so that identical seeds give
 * bit-identical streams on any platform.
 *
 * derive() spawns statistically independent child streams keyed off the
 * *construction* seed, so derivation does not depend on how many draws have
 * been consumed.
 */
class Rng {
public:
    explicit Rng(std::uint64_t seed) : seed_(seed), engine_(mix64(seed)) {}

    std::uint64_t seed() const { return seed_; }

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform on [0, 1) with 53 random bits.
    double uniform() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Unit-rate exponential variate.
    double exponential() { return -std::log1p(-uniform()); }

    /// Unbiased integer in [0, n) via mask rejection.
    std::uint64_t bounded(std::uint64_t n) {
        if (n <= 1) return 0;
        const std::uint64_t mask = ~std::uint64_t{0} >> std::countl_zero(n - 1);
        std::uint64_t x;
        do {
            x = next_u64() & mask;
        } while (x >= n);
        return x;
    }

    /// Independent child stream; independent of this stream's draw position.
    Rng derive(std::uint64_t tag) const { return Rng(mix_seed(seed_, tag)); }

private:
    std::uint64_t seed_;
    std::mt19937_64 engine_;
};

}  // namespace mocu
