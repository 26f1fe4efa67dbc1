#pragma once

#include <cstdint>
#include <limits>
#include <random>
#include <vector>

namespace abusekit::rng {

// splitmix64 step; used to derive independent sub-seeds from one master seed.
inline std::uint64_t split_seed(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Unbiased draw in [0, n) with an explicit rejection loop so results do not
// depend on the standard library's unspecified distribution algorithms.
inline std::size_t uniform_index(std::mt19937_64& gen, std::size_t n) {
    if (n <= 1) return 0;
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % n;
    std::uint64_t v;
    do {
        v = gen();
    } while (v >= limit);
    return static_cast<std::size_t>(v % n);
}

inline double uniform_real(std::mt19937_64& gen, double lo, double hi) {
    const double u = static_cast<double>(gen() >> 11) * 0x1.0p-53;  // [0,1)
    return lo + u * (hi - lo);
}

// Fisher-Yates with the deterministic index draw above.
template <typename T>
void shuffle(std::vector<T>& v, std::mt19937_64& gen) {
    for (std::size_t i = v.size(); i > 1; --i) {
        std::swap(v[i - 1], v[uniform_index(gen, i)]);
    }
}

}  // namespace abusekit::rng
