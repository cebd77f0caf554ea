#pragma once

#include <cstdint>

namespace kcg {

// SplitMix64 (Steele/Lea/Flood variant). This is the single generator all
// randomized strategies use, so a (schema, strategies, seed) triple fixes
// every match byte for byte. Strategy streams are derived from the match
// seed with derive(); Alice uses salt 1, Bob salt 2.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    // Uniform-ish value in [0, n); n > 0. Plain modulo: the tiny bias is
    // irrelevant for adversary sampling and keeps replays portable.
    std::uint64_t below(std::uint64_t n) { return next() % n; }

    bool chance_percent(unsigned p) { return below(100) < p; }

    static std::uint64_t derive(std::uint64_t seed, std::uint64_t salt) {
        SplitMix64 g(seed ^ (salt * 0xd6e8feb86659fd93ull));
        return g.next();
    }

private:
    std::uint64_t state_;
};

} // namespace kcg
