#ifndef HM3_RNG_HPP
#define HM3_RNG_HPP

#include <bit>
#include <cstdint>
#include <random>

namespace hm3 {

/// Deterministic RNG wrapper.  mt19937_64 output is pinned by the standard;
/// the bounded draw is done by rejection on a bitmask rather than through
/// std::uniform_int_distribution, whose mapping is implementation-defined.
struct Rng {
    std::mt19937_64 eng;

    explicit Rng(std::uint64_t seed) : eng(seed) {}

    std::uint64_t next() { return eng(); }

    std::uint64_t below(std::uint64_t bound) {
        if (bound <= 1) return 0;
        std::uint64_t mask = ~std::uint64_t(0) >> std::countl_zero(bound - 1);
        std::uint64_t v;
        do { v = eng() & mask; } while (v >= bound);
        return v;
    }

    double unit01() { return double(eng() >> 11) * 0x1.0p-53; }

    bool bernoulli(double p) { return unit01() < p; }
};

} // namespace hm3

#endif
