// Deterministic PRNG and shuffle. std::shuffle and the std distributions are
// implementation-defined, so byte-identical runs across platforms need our own.
#pragma once

#include <vector>

#include "edsim/common.hpp"

namespace edsim {

inline u64 splitmix64_step(u64& state) {
    u64 z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

class Rng {
public:
    explicit Rng(u64 seed) : state_(seed) {}

    // Substream derivation: one seed, many independent deterministic streams.
    static Rng stream(u64 seed, u64 a, u64 b = 0) {
        u64 s = seed;
        u64 h = splitmix64_step(s);
        s = seed ^ (a * 0xd1342543de82ef95ULL) ^ h;
        h = splitmix64_step(s);
        s ^= (b * 0xaf251af3b0f025b5ULL) + h;
        return Rng(s);
    }

    u64 next() { return splitmix64_step(state_); }

    // Uniform in [0, bound) via rejection; exact and platform-stable.
    u64 next_below(u64 bound) {
        if (bound <= 1) return 0;
        const u64 limit = ~u64{0} - (~u64{0} % bound);
        u64 v = next();
        while (v >= limit) v = next();
        return v % bound;
    }

    // Uniform in [lo, hi] inclusive.
    u64 next_range(u64 lo, u64 hi) { return lo + next_below(hi - lo + 1); }

    template <typename T>
    void shuffle(std::vector<T>& items) {
        for (u64 i = items.size(); i > 1; --i) {
            u64 j = next_below(i);
            std::swap(items[i - 1], items[j]);
        }
    }

private:
    u64 state_;
};

} // namespace edsim
