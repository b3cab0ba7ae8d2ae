#include "ergolab/observables.hpp"

#include <algorithm>
#include <cmath>

#include "ergolab/estimators.hpp"
#include "ergolab/rng.hpp"

namespace ergolab {

double PsiTable::operator()(double d) const {
    if (d <= r.front()) return val.front();
    if (d >= r.back()) return val.back();
    auto it = std::upper_bound(r.begin(), r.end(), d);
    std::size_t i = static_cast<std::size_t>(it - r.begin());
    double t = (d - r[i - 1]) / (r[i] - r[i - 1]);
    return val[i - 1] + t * (val[i] - val[i - 1]);
}

double PsiTable::inverse(double u) const {
    // val decreasing in r; largest radius with psi(r) >= u
    if (u <= val.back()) return r.back();
    if (u >= val.front()) return r.front();
    std::size_t lo = 0, hi = r.size() - 1;
    while (hi - lo > 1) {
        std::size_t mid = (lo + hi) / 2;
        (val[mid] >= u ? lo : hi) = mid;
    }
    double t = (u - val[lo]) / (val[hi] - val[lo]);
    return r[lo] + t * (r[hi] - r[lo]);
}

void PsiTable::validate() const {
    if (r.size() != val.size() || r.size() < 2) throw error("psi table needs >= 2 rows");
    for (std::size_t i = 0; i + 1 < r.size(); ++i) {
        if (r[i] >= r[i + 1]) throw error("psi radii must increase");
        if (val[i] <= val[i + 1]) throw error("psi must be strictly decreasing");
    }
}

ObservableSpec ObservableSpec::dist_power(Coord c, double xtilde, double k,
                                          double local_dim) {
    if (k <= 0.0) throw error("DistPower exponent k must be > 0");
    ObservableSpec o;
    o.kind = ObsKind::DistPower;
    o.coord = c;
    o.xtilde = xtilde;
    o.xtilde_f = Frac128::from_double(xtilde);
    o.k = k;
    o.alpha_phi = local_dim / k;
    return o;
}

ObservableSpec ObservableSpec::dist_power_fiber(Coord c, Frac128 xtilde, double k) {
    ObservableSpec o = dist_power(c, xtilde.to_double(), k);
    o.xtilde_f = xtilde;
    return o;
}

ObservableSpec ObservableSpec::neg_log_dist(Coord c, double xtilde) {
    ObservableSpec o;
    o.kind = ObsKind::NegLogDist;
    o.coord = c;
    o.xtilde = xtilde;
    o.xtilde_f = Frac128::from_double(xtilde);
    return o;
}

ObservableSpec ObservableSpec::psi_of_dist(Coord c, double xtilde, PsiTable psi) {
    psi.validate();
    ObservableSpec o;
    o.kind = ObsKind::PsiOfDist;
    o.coord = c;
    o.xtilde = xtilde;
    o.xtilde_f = Frac128::from_double(xtilde);
    o.psi = std::move(psi);
    return o;
}

ObservableSpec ObservableSpec::ball_indicator(Coord c, double center, double radius) {
    ObservableSpec o;
    o.kind = ObsKind::BallIndicator;
    o.coord = c;
    o.xtilde = center;
    o.xtilde_f = Frac128::from_double(center);
    o.radius = radius;
    return o;
}

ObservableSpec ObservableSpec::symbolic_coding(std::vector<std::uint8_t> target) {
    if (target.empty()) throw error("symbolic observable needs a target sequence");
    ObservableSpec o;
    o.kind = ObsKind::SymbolicCodingDist;
    o.coord = Coord::Base;
    o.target_digits = std::move(target);
    return o;
}

double ObservableSpec::distance_to_center(const Point& p) const {
    switch (coord) {
        case Coord::Base:
            return std::fabs(p.base - xtilde);
        case Coord::Fiber0:
            return circle_dist(p.fiber[0], xtilde_f);
        case Coord::Fiber1:
            return circle_dist(p.fiber[1], xtilde_f);
    }
    return 0.0;
}

double eval(const ObservableSpec& obs, const Point& p) {
    double d = obs.distance_to_center(p);
    switch (obs.kind) {
        case ObsKind::DistPower:
            if (d == 0.0) return kSingularValue;
            if (obs.k == 1.0) return 1.0 / d;
            if (obs.k == 2.0) return 1.0 / (d * d);
            return std::pow(d, -obs.k);
        case ObsKind::NegLogDist:
            if (d == 0.0) return kSingularValue;
            return -std::log(d);
        case ObsKind::PsiOfDist:
            return obs.psi(d);
        case ObsKind::BallIndicator:
            return d <= obs.radius ? 1.0 : 0.0;
        case ObsKind::SymbolicCodingDist: {
            auto digits = binary_digits(p.base, obs.target_digits.size());
            for (std::size_t i = 0; i < digits.size(); ++i)
                if (digits[i] != obs.target_digits[i])
                    return std::ldexp(1.0, -static_cast<int>(i + 1));
            return std::ldexp(1.0, -static_cast<int>(digits.size()));
        }
        case ObsKind::ReturnTime:
            throw error("return times are evaluated on an induced system, not a bare state");
    }
    return 0.0;
}

// Digits through the doubling coding; dyadic inputs get their terminating
// expansion (the coding formula is total on [0,1)).
std::vector<std::uint8_t> binary_digits(double x, std::size_t depth) {
    if (!(x >= 0.0 && x < 1.0)) throw error("digit extraction needs x in [0,1)");
    std::vector<std::uint8_t> d(depth);
    for (std::size_t i = 0; i < depth; ++i) {
        d[i] = x >= 0.5 ? 1 : 0;
        x = 2.0 * x;
        if (x >= 1.0) x -= 1.0;
    }
    return d;
}

CodingDistance symbolic_coding_distance(double x, double y, std::size_t depth) {
    auto dx = binary_digits(x, depth);
    auto dy = binary_digits(y, depth);
    for (std::size_t i = 0; i < depth; ++i)
        if (dx[i] != dy[i]) return {std::ldexp(1.0, -static_cast<int>(i + 1)), false};
    return {std::ldexp(1.0, -static_cast<int>(depth)), true};
}

namespace {

double slope_of_level_masses(const std::vector<double>& levels,
                             const std::vector<std::size_t>& hits, std::size_t n) {
    std::vector<double> lx, ly;
    for (std::size_t i = 0; i < levels.size(); ++i) {
        if (hits[i] == 0) continue;
        lx.push_back(-std::log(levels[i]));
        ly.push_back(std::log(static_cast<double>(hits[i]) / static_cast<double>(n)));
    }
    if (lx.size() < 2) throw InsufficientTailMass("level grid too sparse for a fit");
    return ols(lx, ly).slope;
}

} // namespace

double alpha_phi_empirical(const ObservableSpec& obs,
                           const std::function<Point(std::mt19937_64&)>& sampler,
                           const std::vector<double>& levels,
                           std::size_t n_samples, std::uint64_t seed) {
    auto rng = make_rng(seed);
    std::vector<std::size_t> hits(levels.size(), 0);
    for (std::size_t s = 0; s < n_samples; ++s) {
        double v = eval(obs, sampler(rng));
        for (std::size_t i = 0; i < levels.size(); ++i)
            if (v >= levels[i]) ++hits[i];
    }
    if (hits.back() < 100)
        throw InsufficientTailMass("fewer than 100 samples reached the top level");
    return slope_of_level_masses(levels, hits, n_samples);
}

double alpha_phi_empirical_scalar(const std::function<double(std::mt19937_64&)>& draw,
                                  const std::vector<double>& levels,
                                  std::size_t n_samples, std::uint64_t seed) {
    auto rng = make_rng(seed);
    std::vector<std::size_t> hits(levels.size(), 0);
    for (std::size_t s = 0; s < n_samples; ++s) {
        double v = draw(rng);
        for (std::size_t i = 0; i < levels.size(); ++i)
            if (v >= levels[i]) ++hits[i];
    }
    if (hits.back() < 100)
        throw InsufficientTailMass("fewer than 100 samples reached the top level");
    return slope_of_level_masses(levels, hits, n_samples);
}

} // namespace ergolab
