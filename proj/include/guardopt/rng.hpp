#pragma once
// Portable seeded randomness. std::mt19937_64 has a fully specified output
// sequence; the standard distributions do not, so the few draws we need are
// derived from raw engine output here.

#include <cstdint>
#include <limits>
#include <random>

namespace guardopt {

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    /// Unbiased integer in [0, n); n > 0.
    std::uint64_t below(std::uint64_t n)
    {
        const std::uint64_t max = std::numeric_limits<std::uint64_t>::max();
        const std::uint64_t limit = max - (max % n + 1) % n;  // largest multiple of n, minus one
        std::uint64_t r = engine_();
        while (r > limit) r = engine_();
        return r % n;
    }

    /// Two fresh bits per call, for QPSK.
    unsigned bits2() { return static_cast<unsigned>(engine_() & 0x3u); }

private:
    std::mt19937_64 engine_;
};

}  // namespace guardopt
