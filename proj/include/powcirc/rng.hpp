#ifndef POWCIRC_RNG_HPP
#define POWCIRC_RNG_HPP

#include <cstdint>

namespace powcirc {

// splitmix64: tiny deterministic generator for seeded corpora and the
// selftest command. Not a cryptographic source.
struct SplitMix64 {
    std::uint64_t state;

    explicit SplitMix64(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }
    // Uniform-enough draw in [0, bound) for test-corpus purposes.
    std::uint64_t below(std::uint64_t bound) { return bound == 0 ? 0 : next() % bound; }
};

}  // namespace powcirc

#endif
