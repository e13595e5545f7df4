#pragma once

#include <cstdint>

namespace lsat {

// 64-bit multiplicative congruential generator. The exact sequence is part
// of the toolkit's reproducibility contract (documented in docs/formats.md):
//   state_0   = 2*seed + 1            (forced odd)
//   state_n+1 = state_n * 6364136223846793005  mod 2^64
//   draw(k)   = (state_n+1 >> 33) mod k
// All seeded behavior (augmentation, option padding, random fallback) uses
// this generator so independent implementations agree byte-for-byte.
class Mcg64 {
public:
    explicit Mcg64(std::uint64_t seed) : state_(2 * seed + 1) {}

    std::uint64_t next() {
        state_ *= 6364136223846793005ULL;
        return state_ >> 33;
    }

    // Uniform draw in [0, k). k must be positive.
    std::uint64_t draw(std::uint64_t k) { return next() % k; }

private:
    std::uint64_t state_;
};

} // namespace lsat
