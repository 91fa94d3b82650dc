#pragma once

#include <cstdint>

namespace cft {

// Deterministic 64-bit PRNG (splitmix64). All stochastic behavior in the
// library flows through this generator so that runs are reproducible from a
// single seed across platforms; std:: distributions are avoided on purpose.
class Rng {
public:
    explicit Rng(uint64_t seed = 1) : state_(seed) {}

    uint64_t next() {
        uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, 1).
    double uniform() { return (next() >> 11) * 0x1.0p-53; }

    // Uniform in [0, bound). Rejection-free modulo is fine here: bound is
    // tiny relative to 2^64 in all our uses, and determinism matters more
    // than the negligible modulo bias.
    uint64_t below(uint64_t bound) { return bound == 0 ? 0 : next() % bound; }

    // Uniform integer in [lo, hi] inclusive.
    int64_t range(int64_t lo, int64_t hi) {
        return lo + static_cast<int64_t>(below(static_cast<uint64_t>(hi - lo + 1)));
    }

    bool coin(double p) { return uniform() < p; }

private:
    uint64_t state_;
};

// Derives an independent stream seed from (seed, tags). Used to split
// per-vertex / per-purpose randomness so that processing order cannot
// perturb outcomes.
inline uint64_t derive_seed(uint64_t seed, uint64_t a, uint64_t b = 0, uint64_t c = 0) {
    Rng r(seed ^ (a * 0xd1342543de82ef95ULL) ^ (b * 0xaf251af3b0f025b5ULL) ^
          (c * 0x9e3779b97f4a7c15ULL));
    r.next();
    return r.next();
}

} // namespace cft
