#include "ergolab/orbit.hpp"

#include <cmath>
#include <cstring>

namespace ergolab {

namespace {

u128 frac_bits_of(double x) {
    return Frac128::from_double(x).v;
}

std::uint64_t tape_seed(const MapSpec& map, const Point& p) {
    std::uint64_t s = 0x2545f4914f6cdd1dULL ^ (static_cast<std::uint64_t>(map.kind) << 56);
    std::uint64_t bits;
    static_assert(sizeof(bits) == sizeof(double));
    std::memcpy(&bits, &p.base, sizeof(bits));
    s ^= bits;
    for (int i = 0; i < p.nfib; ++i) {
        s = s * 0x9e3779b97f4a7c15ULL + static_cast<std::uint64_t>(p.fiber[i].v >> 64);
        s = s * 0x9e3779b97f4a7c15ULL + static_cast<std::uint64_t>(p.fiber[i].v);
    }
    return s;
}

} // namespace

Orbit::Orbit(const MapSpec& map, const Point& p0)
    : map_(map), p_(p0), tape_(make_rng(tape_seed(map, p0))) {
    p_.nfib = map.fiber_count();
    if (map_.kind == MapKind::CircleRotation) {
        p_.base = p_.fiber[0].to_double();
    }
    if (map_.dyadic_base()) {
        base_bits_ = frac_bits_of(p_.base);
    }
}

std::uint64_t Orbit::next_bit() {
    if (tape_left_ == 0) {
        tape_word_ = tape_();
        tape_left_ = 64;
    }
    std::uint64_t b = tape_word_ & 1u;
    tape_word_ >>= 1;
    --tape_left_;
    return b;
}

void Orbit::sync_base() {
    // truncated projection: base >= 0.5 in doubles iff the top bit is set,
    // so symbol extraction downstream agrees with the exact representation
    p_.base = Frac128{base_bits_}.to_double_trunc();
}

void Orbit::advance() {
    ++t_;
    switch (map_.kind) {
        case MapKind::LSV:
            p_.base = lsv_apply(map_.alpha, map_.two_pow_alpha, p_.base);
            break;
        case MapKind::Doubling:
            base_bits_ = (base_bits_ << 1) | static_cast<u128>(next_bit());
            sync_base();
            break;
        case MapKind::Tent: {
            bool top = (base_bits_ >> 127) != 0;
            base_bits_ = (base_bits_ << 1) | static_cast<u128>(next_bit());
            if (top) base_bits_ = static_cast<u128>(0) - base_bits_;   // 2-2x mod 1
            sync_base();
            break;
        }
        case MapKind::CircleRotation:
            p_.fiber[0] = p_.fiber[0] + map_.theta1.value;
            p_.base = p_.fiber[0].to_double();
            break;
        case MapKind::SkewDoublingCircle:
        case MapKind::SkewDoublingTorus2: {
            bool in_Y = (base_bits_ >> 127) != 0;   // base in [1/2, 1)
            if (in_Y) {
                p_.fiber[0] = p_.fiber[0] + map_.theta1.value;
                if (map_.kind == MapKind::SkewDoublingTorus2)
                    p_.fiber[1] = p_.fiber[1] + map_.theta2.value;
            }
            base_bits_ = (base_bits_ << 1) | static_cast<u128>(next_bit());
            sync_base();
            break;
        }
    }
}

std::vector<ProcessTrace> iterate_with_checkpoints(
    const MapSpec& map, const Point& p0, const CheckpointSchedule& sched,
    const std::vector<std::shared_ptr<Monitor>>& monitors) {
    Orbit orbit(map, p0);
    std::size_t next_cp = 0;
    for (auto& m : monitors) m->observe(0, orbit.state());
    const std::uint64_t n_max = sched.n_max();
    for (std::uint64_t k = 1; k <= n_max; ++k) {
        orbit.advance();
        for (auto& m : monitors) m->observe(k, orbit.state());
        if (next_cp < sched.times.size() && sched.times[next_cp] == k) {
            for (auto& m : monitors) m->at_checkpoint(k);
            ++next_cp;
        }
    }
    std::vector<ProcessTrace> out;
    for (auto& m : monitors) {
        auto ts = m->traces();
        out.insert(out.end(), ts.begin(), ts.end());
    }
    return out;
}

Point random_point(const MapSpec& map, std::mt19937_64& rng) {
    Point p;
    p.nfib = map.fiber_count();
    if (map.kind == MapKind::CircleRotation) {
        u128 v = (static_cast<u128>(rng()) << 64) | rng();
        p.fiber[0] = Frac128{v};
        p.base = p.fiber[0].to_double();
        return p;
    }
    p.base = unit_uniform_generic(rng);
    for (int i = 0; i < p.nfib; ++i) {
        u128 v = (static_cast<u128>(rng()) << 64) | rng();
        p.fiber[i] = Frac128{v};
    }
    return p;
}

} // namespace ergolab
