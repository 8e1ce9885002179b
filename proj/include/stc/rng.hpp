#pragma once

#include <cstdint>
#include <random>

namespace stc {

// Deterministic random source. The engine (mt19937_64) is fully specified by the
// C++ standard; bounded draws and doubles are done by hand because the standard
// distributions are implementation-defined and output must be reproducible
// byte-for-byte across toolchains.
class Rng {
  public:
    explicit Rng(uint64_t seed) : eng_(seed) {}
    // Independent stream derived from (seed, stream), e.g. one per Monte-Carlo trial.
    Rng(uint64_t seed, uint64_t stream) : eng_(mix(seed, stream)) {}

    uint64_t next() { return eng_(); }

    // Uniform integer in [0, n). n must be nonzero.
    uint64_t below(uint64_t n) {
        uint64_t threshold = -n % n; // 2^64 mod n
        for (;;) {
            uint64_t r = next();
            if (r >= threshold) return r % n;
        }
    }

    // Uniform double in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    bool bernoulli(double p) { return uniform() < p; }

  private:
    static uint64_t mix(uint64_t a, uint64_t b) {
        // splitmix64 finalizer over the pair, to decorrelate nearby streams.
        uint64_t x = a + 0x9e3779b97f4a7c15ULL * (b + 1);
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
        return x ^ (x >> 31);
    }

    std::mt19937_64 eng_;
};

} // namespace stc
