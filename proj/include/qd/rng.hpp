#pragma once

#include <cstdint>
#include <random>

namespace qd {

// Deterministic random source. Every run is fully determined by a 64-bit
// seed. Substreams are derived from the original seed, not the current
// state, so trial i sees the same stream no matter how much the parent has
// been consumed or which thread asks for it.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : seed_(seed), gen_(mix(seed)) {}

    std::uint64_t seed() const { return seed_; }

    std::uint64_t next_u64() { return gen_(); }

    // 53-bit uniform double in [0, 1).
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // Unbiased uniform integer in [0, n); rejection sampling on a
    // power-of-two mask.
    std::uint32_t next_below(std::uint32_t n) {
        if (n <= 1) return 0;
        std::uint64_t mask = n - 1;
        mask |= mask >> 1;
        mask |= mask >> 2;
        mask |= mask >> 4;
        mask |= mask >> 8;
        mask |= mask >> 16;
        for (;;) {
            std::uint64_t v = next_u64() & mask;
            if (v < n) return static_cast<std::uint32_t>(v);
        }
    }

    // Independent stream keyed on (seed, index).
    Rng substream(std::uint64_t index) const {
        return Rng(mix(seed_ ^ (0x9e3779b97f4a7c15ULL * (index + 1))));
    }

private:
    // splitmix64 finalizer
    static std::uint64_t mix(std::uint64_t x) {
        x += 0x9e3779b97f4a7c15ULL;
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
        return x ^ (x >> 31);
    }

    std::uint64_t seed_;
    std::mt19937_64 gen_;
};

} // namespace qd
