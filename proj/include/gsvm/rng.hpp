#pragma once

#include "gsvm/types.hpp"

#include <cstdint>

namespace gsvm {

// Deterministic, implementation-independent sampler (splitmix64). The seeded
// property checks are part of the public contract, so their streams must not
// depend on the standard library's distribution internals.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform in [lo, hi).
    double uniform(double lo, double hi) {
        const double u = static_cast<double>(next() >> 11) * 0x1.0p-53;
        return lo + (hi - lo) * u;
    }

    Vector uniform_vector(Index n, double lo, double hi) {
        Vector v(n);
        for (Index i = 0; i < n; ++i) v[i] = uniform(lo, hi);
        return v;
    }

private:
    std::uint64_t state_;
};

}  // namespace gsvm
