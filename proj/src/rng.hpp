#pragma once

#include <bit>
#include <cstdint>
#include <random>
#include <vector>

#include "bigint.hpp"

namespace utr {

// Deterministic pseudo-random stream: identical seeds yield identical outputs
// for identical call sequences. One instance per worker; never shared.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed), seed_(seed) {}

    std::uint64_t seed() const noexcept { return seed_; }

    std::uint64_t next_u64() { return engine_(); }

    // Uniform in [0, bound); bound == 0 is treated as bound == 1.
    std::uint64_t below(std::uint64_t bound) {
        if (bound <= 1) return 0;
        std::uint64_t mask = ~0ull >> std::countl_zero(bound - 1);
        for (;;) {
            std::uint64_t v = next_u64() & mask;
            if (v < bound) return v;
        }
    }

    // Uniform in [0, bound); bound must be positive.
    BigInt below_big(const BigInt& bound);

    // Uniform in [0,1) with 53 random bits.
    double real01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Derive an independent stream; deterministic function of this one.
    Rng split() { return Rng(next_u64() ^ 0x9e3779b97f4a7c15ull); }

private:
    std::mt19937_64 engine_;
    std::uint64_t seed_;
};

}  // namespace utr
