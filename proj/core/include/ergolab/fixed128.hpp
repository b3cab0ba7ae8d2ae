#pragma once

#include <cmath>
#include <cstdint>

namespace ergolab {

using u128 = unsigned __int128;

// A point on the unit circle S^1 = [0,1), stored as v / 2^128.
// Addition wraps mod 1 for free; rotation by a fixed angle therefore has
// zero accumulated drift regardless of orbit length.
struct Frac128 {
    u128 v = 0;

    static Frac128 from_double(double x) {
        x -= std::floor(x);
        if (x >= 1.0) x = 0.0;
        double hi_f = std::ldexp(x, 64);
        auto hi = static_cast<std::uint64_t>(hi_f);
        double rem = hi_f - static_cast<double>(hi);
        auto lo = static_cast<std::uint64_t>(std::ldexp(rem, 64));
        return Frac128{(static_cast<u128>(hi) << 64) | lo};
    }

    double to_double() const {
        auto hi = static_cast<std::uint64_t>(v >> 64);
        auto lo = static_cast<std::uint64_t>(v);
        return static_cast<double>(hi) * 0x1.0p-64 + static_cast<double>(lo) * 0x1.0p-128;
    }

    // truncated 53-bit projection: sign of (x - 1/2) matches the top bit
    double to_double_trunc() const {
        return static_cast<double>(static_cast<std::uint64_t>(v >> 75)) * 0x1.0p-53;
    }

    Frac128 operator+(Frac128 o) const { return Frac128{static_cast<u128>(v + o.v)}; }
    Frac128 operator-(Frac128 o) const { return Frac128{static_cast<u128>(v - o.v)}; }
    bool operator==(const Frac128&) const = default;

    // {n * theta}: wrapping 128-bit multiply, exact mod 1.
    Frac128 times(std::uint64_t n) const { return Frac128{static_cast<u128>(v * n)}; }
};

// min(|a-b|, 1-|a-b|) evaluated in integer arithmetic, then converted once.
inline double circle_dist(Frac128 a, Frac128 b) {
    u128 d = a.v - b.v;
    u128 m = 0 - d;      // wraps: distance the other way round
    u128 lo = d < m ? d : m;
    auto hi64 = static_cast<std::uint64_t>(lo >> 64);
    auto lo64 = static_cast<std::uint64_t>(lo);
    return static_cast<double>(hi64) * 0x1.0p-64 + static_cast<double>(lo64) * 0x1.0p-128;
}

inline double circle_dist_double(double a, double b) {
    double d = std::fabs(a - b);
    return d <= 0.5 ? d : 1.0 - d;
}

} // namespace ergolab
