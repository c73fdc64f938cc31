#pragma once

#include <cstdint>

namespace stallings {

// SplitMix64.  Chosen over std::mt19937_64 because the stream must be
// byte-reproducible across standard libraries, including the integer
// draws (std distributions are not portable).
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform integer in [0, n).  n must be positive.
    std::uint64_t below(std::uint64_t n) {
        // Rejection to kill modulo bias; the loop practically never spins.
        std::uint64_t limit = ~0ULL - (~0ULL % n);
        std::uint64_t v = next();
        while (v >= limit) v = next();
        return v % n;
    }

    // Uniform integer in [lo, hi] inclusive.
    std::int64_t range(std::int64_t lo, std::int64_t hi) {
        return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo + 1)));
    }

    bool chance_num_den(std::uint64_t num, std::uint64_t den) {
        return below(den) < num;
    }

    // Independent substream for item `index` of a seeded run.  Mixing the
    // pair through one SplitMix64 step decorrelates neighbouring indices.
    static Rng substream(std::uint64_t seed, std::uint64_t index) {
        Rng mixer(seed ^ (0x632be59bd9b4e019ULL * (index + 1)));
        std::uint64_t s = mixer.next();
        return Rng(s);
    }

  private:
    std::uint64_t state_;
};

}  // namespace stallings
