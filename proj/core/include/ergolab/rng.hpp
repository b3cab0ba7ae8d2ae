#pragma once

#include <cstdint>
#include <random>

namespace ergolab {

inline std::uint64_t splitmix64(std::uint64_t& s) {
    std::uint64_t z = (s += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Every random draw in an ensemble is a pure function of (master_seed,
// orbit_index, retry); thread count and scheduling cannot change results.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t orbit,
                                 std::uint64_t retry = 0) {
    std::uint64_t s = master;
    std::uint64_t a = splitmix64(s);
    s = master ^ (0x9e3779b97f4a7c15ULL * (orbit + 1)) ^ (retry << 32);
    std::uint64_t b = splitmix64(s);
    return a ^ (b + 0x632be59bd9b4e019ULL);
}

inline std::mt19937_64 make_rng(std::uint64_t seed) {
    std::uint64_t s = seed;
    std::seed_seq seq{splitmix64(s), splitmix64(s), splitmix64(s), splitmix64(s)};
    return std::mt19937_64(seq);
}

// Uniform in [0,1) on the 53-bit grid. uniform_real_distribution is not
// reproducible across standard libraries, this is.
inline double unit_uniform(std::mt19937_64& g) {
    return static_cast<double>(g() >> 11) * 0x1.0p-53;
}

// Uniform in [0,1) rejecting coarse dyadics and map fixed points.
// The almost-sure laws exclude a null set; these are its representable part.
inline double unit_uniform_generic(std::mt19937_64& g) {
    for (;;) {
        std::uint64_t r = g() >> 11;
        if ((r & 0xfffffULL) == 0) continue;   // low 20 bits zero: too dyadic
        double x = static_cast<double>(r) * 0x1.0p-53;
        if (x == 0.0 || x == 0.5) continue;
        return x;
    }
}

} // namespace ergolab
