#pragma once

#include <array>
#include <cmath>
#include <string>

#include "ergolab/diophantine.hpp"
#include "ergolab/fixed128.hpp"

namespace ergolab {

enum class MapKind {
    LSV,                 // x(1 + 2^a x^a) on [0,1/2), 2x-1 on [1/2,1]
    Doubling,            // 2x mod 1
    Tent,                // 1 - |2x - 1|
    CircleRotation,      // t -> t + theta on S^1 (state is fiber 0)
    SkewDoublingCircle,  // (x,t) -> (2x mod 1, t + theta 1_{[1/2,1]}(x))
    SkewDoublingTorus2,  // doubling base, two rotated fibers
};

struct MapSpec {
    MapKind kind = MapKind::Doubling;
    double alpha = 0.0;            // LSV intermittency exponent, >= 0
    double two_pow_alpha = 1.0;
    AngleSpec theta1, theta2;

    static MapSpec lsv(double alpha);
    static MapSpec doubling() {
        MapSpec m;
        m.kind = MapKind::Doubling;
        return m;
    }
    static MapSpec tent() {
        MapSpec m;
        m.kind = MapKind::Tent;
        return m;
    }
    static MapSpec rotation(AngleSpec theta);
    static MapSpec skew_circle(AngleSpec theta);
    static MapSpec skew_torus2(AngleSpec theta1, AngleSpec theta2);

    bool infinite_measure() const { return kind == MapKind::LSV && alpha >= 1.0; }
    int fiber_count() const;
    // base coordinate is conjugate to a binary shift; long orbits need the
    // bit-tape engine rather than bare double iteration
    bool dyadic_base() const {
        return kind == MapKind::Doubling || kind == MapKind::Tent ||
               kind == MapKind::SkewDoublingCircle || kind == MapKind::SkewDoublingTorus2;
    }
    std::string name() const;
};

struct Point {
    double base = 0.0;                 // [0,1)
    std::array<Frac128, 2> fiber{};    // circle coordinates, exact
    int nfib = 0;

    static Point on_interval(double x) { return Point{x, {}, 0}; }
    static Point on_circle(Frac128 t) { return Point{0.0, {t, {}}, 1}; }
};

// One application of the map exactly as displayed: the LSV branch is chosen
// by x < 1/2 versus x >= 1/2 (the point 1/2 itself takes 2x-1), skew fibers
// advance by theta only when the base lies in [1/2, 1].
Point step(const MapSpec& map, const Point& p);

// f_alpha restricted to the interval, branch at 1/2 as above.
double lsv_apply(double alpha, double two_pow_alpha, double x);

} // namespace ergolab
