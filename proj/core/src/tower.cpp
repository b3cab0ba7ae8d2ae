#include "ergolab/tower.hpp"

#include <algorithm>
#include <cmath>

#include "ergolab/ensemble.hpp"
#include "ergolab/estimators.hpp"
#include "ergolab/rng.hpp"

namespace ergolab {

TowerSpec::TowerSpec(double beta, std::size_t i_max) : beta_(beta), i_max_(i_max) {
    if (!(beta > 0.0 && beta < 1.0)) throw error("tower beta must lie in (0,1)");
    if (i_max < 2) throw error("tower needs at least two branches");
    cum_.resize(i_max + 1);
    cum_[0] = 0.0;
    long double z = 0.0L;
    for (std::size_t i = 1; i <= i_max; ++i)
        z += std::pow(static_cast<long double>(i), static_cast<long double>(-beta - 1.0));
    // residual tail mass zeta(beta+1) - partial sum, folded into the last branch
    long double tail = (std::pow(static_cast<long double>(i_max), static_cast<long double>(-beta))) / beta;
    long double total = z + tail;
    folded_ = static_cast<double>(tail / total);
    long double acc = 0.0L;
    for (std::size_t i = 1; i < i_max; ++i) {
        acc += std::pow(static_cast<long double>(i), static_cast<long double>(-beta - 1.0)) / total;
        cum_[i] = static_cast<double>(acc);
    }
    cum_[i_max] = 1.0;
}

double TowerSpec::branch_length(std::size_t i) const {
    if (i < 1 || i > i_max_) throw error("branch index out of range");
    return cum_[i] - cum_[i - 1];
}

double TowerSpec::branch_start(std::size_t i) const {
    if (i < 1 || i > i_max_) throw error("branch index out of range");
    return cum_[i - 1];
}

std::size_t TowerSpec::branch_of(double x) const {
    if (!(x >= 0.0 && x < 1.0)) throw error("base coordinate outside [0,1)");
    auto it = std::upper_bound(cum_.begin(), cum_.end(), x);
    auto i = static_cast<std::size_t>(it - cum_.begin());
    if (i < 1) i = 1;
    if (i > i_max_) i = i_max_;
    return i;
}

double TowerSpec::measure_tail(std::size_t n) const {
    if (n <= 1) return 1.0;
    if (n > i_max_) return 0.0;
    return 1.0 - cum_[n - 1];
}

std::size_t TowerSpec::branches_intersecting(double lo, double hi) const {
    std::size_t a = branch_of(std::max(0.0, lo));
    std::size_t b = branch_of(std::min(std::nextafter(1.0, 0.0), hi));
    return b - a + 1;
}

TowerPoint tower_point(const TowerSpec& spec, double base, std::uint64_t level) {
    TowerPoint p;
    p.base = base;
    p.branch = spec.branch_of(base);
    if (level >= p.branch) throw error("tower level must be below the branch return time");
    p.level = level;
    return p;
}

TowerPoint tower_step(const TowerSpec& spec, const TowerPoint& p) {
    TowerPoint q = p;
    if (p.level + 1 < p.branch) {   // R on branch i equals i
        ++q.level;
        return q;
    }
    double len = spec.branch_length(p.branch);
    double x = (p.base - spec.branch_start(p.branch)) / len;
    if (x >= 1.0) x = std::nextafter(1.0, 0.0);
    if (x < 0.0) x = 0.0;
    q.base = x;
    q.level = 0;
    q.branch = spec.branch_of(x);
    return q;
}

double tower_companion_series(const TowerSpec& spec, std::uint64_t n, double zeta,
                              double b) {
    auto K = static_cast<std::uint64_t>(std::floor(std::pow(static_cast<double>(n), 1.0 / b)));
    double s = 0.0;
    for (std::uint64_t k = 1; k <= K; ++k) {
        auto idx = static_cast<std::uint64_t>(std::floor(std::pow(static_cast<double>(k), b)));
        if (idx < 1) idx = 1;
        s += std::min(1.0, std::pow(static_cast<double>(idx), -zeta));
    }
    (void)spec;
    return s;
}

TowerBcResult tower_bc_experiment(const TowerSpec& spec, double center, double zeta,
                                  double eps, std::uint64_t n_max,
                                  std::size_t ensemble, std::uint64_t seed,
                                  int threads, double lower_threshold,
                                  double tail_fraction, std::size_t max_cells) {
    double alpha = 1.0 / spec.beta();
    double r1 = 0.5 * std::min(1.0, 1.0);   // largest target has nu(B_1) = 1
    if (spec.branches_intersecting(center - r1, center + r1) > max_cells)
        throw error("target schedule intersects too many tower cells");

    auto sched = CheckpointSchedule::geometric(n_max, 1.2);
    TowerBcResult res;
    res.checkpoints = sched.times;
    res.ratio_lower.resize(ensemble);
    res.ratio_upper.resize(ensemble);
    res.final_count.resize(ensemble);

    // analytic sandwich series at every checkpoint
    std::vector<double> lower(sched.size()), upper(sched.size());
    for (std::size_t i = 0; i < sched.size(); ++i) {
        lower[i] = tower_companion_series(spec, sched.times[i], zeta, alpha + eps);
        upper[i] = tower_companion_series(spec, sched.times[i], zeta, alpha - eps);
    }

    std::size_t in_sandwich = 0, lower_ok = 0;
    std::vector<std::uint8_t> sandwich_flag(ensemble, 0), lower_flag(ensemble, 0);

    parallel_orbits(ensemble, threads, [&](std::size_t o) {
        auto rng = make_rng(derive_seed(seed, o));
        TowerPoint p = tower_point(spec, unit_uniform_generic(rng), 0);
        std::uint64_t count = 0;
        std::size_t cp = 0;
        std::vector<double> rl(sched.size()), ru(sched.size());
        std::uint64_t block_end = 0;
        double block_radius = 0.5;
        for (std::uint64_t k = 1; k <= n_max; ++k) {
            p = tower_step(spec, p);
            if (p.level == 0) {
                if (k >= block_end) {
                    block_radius = 0.5 * std::min(1.0, std::pow(static_cast<double>(k), -zeta));
                    block_end = k + 4096;
                }
                double d = std::fabs(p.base - center);
                if (d <= block_radius &&
                    d <= 0.5 * std::min(1.0, std::pow(static_cast<double>(k), -zeta)))
                    ++count;
            }
            if (cp < sched.size() && sched.times[cp] == k) {
                rl[cp] = lower[cp] > 0.0 ? static_cast<double>(count) / lower[cp] : 0.0;
                ru[cp] = upper[cp] > 0.0 ? static_cast<double>(count) / upper[cp] : 0.0;
                ++cp;
            }
        }
        res.ratio_lower[o] = std::move(rl);
        res.ratio_upper[o] = std::move(ru);
        res.final_count[o] = count;
        bool sandwich = static_cast<double>(count) >= lower.back() &&
                        static_cast<double>(count) <= upper.back();
        sandwich_flag[o] = sandwich ? 1 : 0;
        auto tb = tail_liminf_limsup(sched.times, res.ratio_lower[o], tail_fraction);
        lower_flag[o] = tb.lo >= lower_threshold ? 1 : 0;
    });

    for (std::size_t o = 0; o < ensemble; ++o) {
        in_sandwich += sandwich_flag[o];
        lower_ok += lower_flag[o];
    }
    res.fraction_in_sandwich = static_cast<double>(in_sandwich) / static_cast<double>(ensemble);
    res.fraction_lower_ok = static_cast<double>(lower_ok) / static_cast<double>(ensemble);
    return res;
}

} // namespace ergolab
