#pragma once

#include <cstdint>
#include <random>

namespace crl {

// Seeded generator with reductions we control, so property suites reproduce
// byte-for-byte across platforms and standard-library versions.
struct Rng {
    explicit Rng(std::uint64_t seed) : eng(seed) {}

    std::uint64_t below(std::uint64_t n) { return n == 0 ? 0 : eng() % n; }
    std::uint64_t in(std::uint64_t lo, std::uint64_t hi) { return lo + below(hi - lo + 1); }
    double unit() { return static_cast<double>(eng() >> 11) * 0x1.0p-53; }

    std::mt19937_64 eng;
};

} // namespace crl
