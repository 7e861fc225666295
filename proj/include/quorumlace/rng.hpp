#pragma once

#include <cstdint>

namespace quorumlace {

// SplitMix64. Used instead of <random> engines because the byte-exact
// replay contract requires identical streams across standard libraries.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, n). n == 0 returns 0.
    std::uint64_t below(std::uint64_t n) {
        if (n == 0) {
            return 0;
        }
        // Multiply-shift; bias is negligible for the small ranges used here
        // and, more importantly, the result is platform-independent.
        unsigned __int128 m = static_cast<unsigned __int128>(next()) * n;
        return static_cast<std::uint64_t>(m >> 64);
    }

    bool chance(std::uint64_t num, std::uint64_t den) { return below(den) < num; }

  private:
    std::uint64_t state_;
};

} // namespace quorumlace
