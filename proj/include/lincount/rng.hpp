#pragma once

#include <cstdint>

namespace lincount {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Counter-based generator: the stream for trial i depends only on (seed, i),
/// so experiment reports are independent of how trials are split across
/// threads.  Draws are platform-independent (no std:: distributions).
class TrialRng {
public:
    TrialRng() : state_(0x853c49e6748fea9bULL) {}
    explicit TrialRng(std::uint64_t seed) : state_(splitmix64(seed)) {}
    TrialRng(std::uint64_t seed, std::uint64_t counter)
        : state_(splitmix64(splitmix64(seed) ^ (counter * 0xd1342543de82ef95ULL + 1))) {}

    std::uint64_t next_u64() {
        state_ += 0x9e3779b97f4a7c15ULL;
        std::uint64_t x = state_;
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
        return x ^ (x >> 31);
    }

    /// Uniform draw in [0, n) by rejection; exact, no modulo bias.
    std::uint64_t below(std::uint64_t n) {
        if (n == 0) return 0;
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t x;
        do {
            x = next_u64();
        } while (x >= limit);
        return x % n;
    }

    // UniformRandomBitGenerator interface
    using result_type = std::uint64_t;
    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return UINT64_MAX; }
    result_type operator()() { return next_u64(); }

private:
    std::uint64_t state_;
};

} // namespace lincount
