#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace majority {

// SplitMix64 step; used to whiten seeds and derive independent streams.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

// Derive a child seed from (master, stream, index). Each (stream, index)
// pair gets a statistically independent stream; reruns with the same
// master seed reproduce every draw bit for bit.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream,
                                 std::uint64_t index = 0) {
    std::uint64_t s = master;
    std::uint64_t a = splitmix64(s);
    s ^= stream * 0x9e3779b97f4a7c15ull;
    std::uint64_t b = splitmix64(s);
    s ^= index * 0xd1342543de82ef95ull;
    return splitmix64(s) ^ a ^ (b << 1);
}

// mt19937_64 wrapper with hand-rolled distributions so the draw sequence
// is fixed by the seed alone (libstdc++'s distribution objects are not
// part of that contract).
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t bits() { return gen_(); }

    // uniform in [0, 1)
    double uniform01() { return (gen_() >> 11) * 0x1.0p-53; }

    // uniform integer in [0, n)
    std::uint64_t below(std::uint64_t n) {
        // rejection sampling; bias-free
        std::uint64_t limit = ~std::uint64_t(0) - ~std::uint64_t(0) % n;
        std::uint64_t x;
        do {
            x = gen_();
        } while (x >= limit);
        return x % n;
    }

    int uniform_int(int lo, int hi) {  // inclusive bounds
        return lo + int(below(std::uint64_t(hi - lo + 1)));
    }

    // unit-rate exponential via inverse CDF; 1 - u > 0 always
    double exponential() { return -std::log(1.0 - uniform01()); }

    bool coin() { return (gen_() >> 63) != 0; }

  private:
    std::mt19937_64 gen_;
};

}  // namespace majority
