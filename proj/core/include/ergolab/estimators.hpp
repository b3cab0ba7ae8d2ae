#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ergolab/processes.hpp"

namespace ergolab {

struct SlopeFit {
    double slope = 0.0;
    double stderr_ = 0.0;
    std::size_t n_points = 0;
};

// OLS of log value against log n over the top `window_fraction` of
// checkpoints in log n. Requires >= 8 points and positive values.
SlopeFit loglog_slope(const ProcessTrace& trace, double window_fraction = 0.25);

SlopeFit ols(const std::vector<double>& x, const std::vector<double>& y);

struct TailBounds {
    double lo = 0.0;
    double hi = 0.0;
    std::uint64_t at_lo = 0, at_hi = 0;   // attaining checkpoint times
    std::uint64_t window_start = 0;
};

// lo = min, hi = max of a ratio sequence over the tail window (top fraction
// of checkpoints in log n). An oscillation verdict is hi - lo > threshold.
TailBounds tail_liminf_limsup(const std::vector<std::uint64_t>& t,
                              const std::vector<double>& ratio,
                              double tail_fraction = 0.25);

// Tabulated increasing function on a grid.
struct MonotoneTable {
    std::vector<double> x;   // increasing
    std::vector<double> y;   // strictly increasing
    void validate() const;
    double eval(double xq) const;      // linear interpolation
    double inverse(double yq) const;   // generalized inverse
};

// The generalized inverse with a +-1 shift applied to the argument:
// shift = -1 gives u -> f^{-1}(u-1), shift = +1 gives u -> f^{-1}(u+1)
// (the two sides of the max-hit bound inversion). Composing forward and
// inverse returns the identity within one grid cell.
MonotoneTable invert_monotone_bound(const MonotoneTable& bound, int shift);

struct TooCensored : error {
    using error::error;
};

// Tail max/min of log tau_{r_k} / (-log r_k) over uncensored radii of a
// geometric grid; at least 10 resolved radii required. The shallowest grid
// levels are excluded: there tau is O(10) and the ratio is pure noise.
struct HittingIndicators {
    double H_bar = 0.0;    // tail max
    double H_under = 0.0;  // tail min
};
HittingIndicators hitting_indicators(const HittingRecord& rec,
                                     std::size_t min_resolved = 10,
                                     std::size_t skip_shallow = 4);

// Per-orbit hitting exponent: OLS slope of log tau on -log r over resolved
// radii (kills the constant bias the plain ratio carries at finite r).
SlopeFit hitting_exponent(const HittingRecord& rec, std::size_t min_resolved = 8);

struct EnsembleStats {
    std::vector<double> values;   // per orbit, in orbit order
    double median = 0.0;
    double iqr = 0.0;
    double pass_fraction = 0.0;
};

EnsembleStats ensemble_aggregate(std::vector<double> per_orbit,
                                 double lo, double hi);   // pass iff in [lo,hi]
double median_of(std::vector<double> v);

// Fitted exponent, tail estimates, ensemble statistics and the predicted
// value for one experiment. Construction keeps tail_lo <= fitted <= tail_hi
// by pointwise dominance (medians preserve pointwise order).
struct ScalingReport {
    std::string name;
    std::string law;          // the limit law under test, as a formula
    double predicted = 0.0;
    double tol_lo = 0.0, tol_hi = 0.0;
    double fitted = 0.0;
    double fitted_stderr = 0.0;
    double tail_lo = 0.0, tail_hi = 0.0;
    EnsembleStats ensemble;
    bool pass = false;
    std::string note;

    static ScalingReport from_per_orbit(std::string name, std::string law,
                                        double predicted, double tol_lo, double tol_hi,
                                        const std::vector<double>& lo_i,
                                        const std::vector<double>& mid_i,
                                        const std::vector<double>& hi_i);
};

} // namespace ergolab
