#include "ergolab/maps.hpp"

#include <cmath>

namespace ergolab {

MapSpec MapSpec::lsv(double alpha) {
    if (alpha < 0.0) throw error("LSV alpha must be >= 0");
    MapSpec m;
    m.kind = MapKind::LSV;
    m.alpha = alpha;
    m.two_pow_alpha = std::exp2(alpha);
    return m;
}

MapSpec MapSpec::rotation(AngleSpec theta) {
    MapSpec m;
    m.kind = MapKind::CircleRotation;
    m.theta1 = std::move(theta);
    return m;
}

MapSpec MapSpec::skew_circle(AngleSpec theta) {
    MapSpec m;
    m.kind = MapKind::SkewDoublingCircle;
    m.theta1 = std::move(theta);
    return m;
}

MapSpec MapSpec::skew_torus2(AngleSpec theta1, AngleSpec theta2) {
    MapSpec m;
    m.kind = MapKind::SkewDoublingTorus2;
    m.theta1 = std::move(theta1);
    m.theta2 = std::move(theta2);
    return m;
}

int MapSpec::fiber_count() const {
    switch (kind) {
        case MapKind::CircleRotation:
        case MapKind::SkewDoublingCircle: return 1;
        case MapKind::SkewDoublingTorus2: return 2;
        default: return 0;
    }
}

std::string MapSpec::name() const {
    switch (kind) {
        case MapKind::LSV: return "lsv(alpha=" + std::to_string(alpha) + ")";
        case MapKind::Doubling: return "doubling";
        case MapKind::Tent: return "tent";
        case MapKind::CircleRotation: return "rotation";
        case MapKind::SkewDoublingCircle: return "skew-circle";
        case MapKind::SkewDoublingTorus2: return "skew-torus2";
    }
    return "?";
}

double lsv_apply(double alpha, double two_pow_alpha, double x) {
    if (x >= 0.5) return 2.0 * x - 1.0;
    double xa;
    if (alpha == 1.0) xa = x;
    else if (alpha == 2.0) xa = x * x;
    else xa = std::pow(x, alpha);
    return x * (1.0 + two_pow_alpha * xa);
}

static double dyadic_base_step(double x) { // 2x mod 1 in doubles
    double y = 2.0 * x;
    return y >= 1.0 ? y - 1.0 : y;
}

Point step(const MapSpec& map, const Point& p) {
    Point q = p;
    switch (map.kind) {
        case MapKind::LSV:
            q.base = lsv_apply(map.alpha, map.two_pow_alpha, p.base);
            break;
        case MapKind::Doubling:
            q.base = dyadic_base_step(p.base);
            break;
        case MapKind::Tent:
            // the peak value 1.0 is kept as written; the next application
            // sends it to 0
            q.base = 1.0 - std::fabs(2.0 * p.base - 1.0);
            break;
        case MapKind::CircleRotation:
            q.nfib = 1;
            q.fiber[0] = p.fiber[0] + map.theta1.value;
            q.base = q.fiber[0].to_double();
            break;
        case MapKind::SkewDoublingCircle:
            q.nfib = 1;
            q.base = dyadic_base_step(p.base);
            if (p.base >= 0.5) q.fiber[0] = p.fiber[0] + map.theta1.value;
            break;
        case MapKind::SkewDoublingTorus2:
            q.nfib = 2;
            q.base = dyadic_base_step(p.base);
            if (p.base >= 0.5) {
                q.fiber[0] = p.fiber[0] + map.theta1.value;
                q.fiber[1] = p.fiber[1] + map.theta2.value;
            }
            break;
    }
    return q;
}

} // namespace ergolab
