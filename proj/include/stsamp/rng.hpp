#pragma once
//
// Deterministic random number generation.  std::uniform_real_distribution is
// implementation-defined, so all draws are derived explicitly from the raw
// 64-bit stream; outputs are reproducible across platforms for a given seed.
//

#include <cstdint>

namespace stsamp {

inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Stateless mix of a seed with an index pair; used by generators that must
/// emit consistent values for a lattice index regardless of window size.
inline std::uint64_t hash_index(std::uint64_t seed, std::int64_t i, std::int64_t j) {
    std::uint64_t s = seed ^ (0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(i))
                           ^ (0xc2b2ae3d27d4eb4fULL * static_cast<std::uint64_t>(j));
    splitmix64(s);
    return splitmix64(s);
}

class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed ^ 0x5851f42d4c957f2dULL) {
        // burn-in decorrelates small seeds
        for (int i = 0; i < 4; ++i) splitmix64(state_);
    }

    std::uint64_t next_u64() { return splitmix64(state_); }

    /// Uniform in [0, 1).
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double a, double b) { return a + (b - a) * uniform(); }

    /// Uniform integer in [0, n).
    std::uint64_t below(std::uint64_t n) { return next_u64() % n; }

private:
    std::uint64_t state_;
};

inline double u64_to_unit(std::uint64_t v) { return static_cast<double>(v >> 11) * 0x1.0p-53; }

} // namespace stsamp
