#include "ergolab/estimators.hpp"

#include <algorithm>
#include <cmath>

namespace ergolab {

SlopeFit ols(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2) throw error("OLS needs >= 2 points");
    std::size_t n = x.size();
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < n; ++i) { mx += x[i]; my += y[i]; }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    if (sxx == 0.0) throw error("degenerate abscissa in OLS");
    SlopeFit f;
    f.slope = sxy / sxx;
    f.n_points = n;
    if (n > 2) {
        double rss = 0.0;
        double b0 = my - f.slope * mx;
        for (std::size_t i = 0; i < n; ++i) {
            double r = y[i] - (b0 + f.slope * x[i]);
            rss += r * r;
        }
        f.stderr_ = std::sqrt(rss / (static_cast<double>(n - 2) * sxx));
    }
    return f;
}

namespace {

std::size_t tail_window_start(const std::vector<std::uint64_t>& t, double fraction) {
    if (t.empty()) return 0;
    double lmax = std::log(static_cast<double>(t.back()));
    double lmin = std::log(static_cast<double>(t.front()));
    double cut = lmax - fraction * (lmax - lmin);
    std::size_t i = 0;
    while (i + 1 < t.size() && std::log(static_cast<double>(t[i])) < cut) ++i;
    return i;
}

} // namespace

SlopeFit loglog_slope(const ProcessTrace& trace, double window_fraction) {
    std::size_t start = tail_window_start(trace.t, window_fraction);
    std::vector<double> lx, ly;
    for (std::size_t i = start; i < trace.t.size(); ++i) {
        if (!(trace.v[i] > 0.0)) throw error("log-log fit needs positive values");
        lx.push_back(std::log(static_cast<double>(trace.t[i])));
        ly.push_back(std::log(trace.v[i]));
    }
    if (lx.size() < 8) throw error("log-log fit needs >= 8 checkpoints in the window");
    return ols(lx, ly);
}

TailBounds tail_liminf_limsup(const std::vector<std::uint64_t>& t,
                              const std::vector<double>& ratio,
                              double tail_fraction) {
    if (t.size() != ratio.size() || t.size() < 12)
        throw error("tail bounds need >= 12 checkpoints");
    std::size_t start = tail_window_start(t, tail_fraction);
    TailBounds b;
    b.window_start = t[start];
    b.lo = b.hi = ratio[start];
    b.at_lo = b.at_hi = t[start];
    for (std::size_t i = start; i < t.size(); ++i) {
        if (ratio[i] < b.lo) { b.lo = ratio[i]; b.at_lo = t[i]; }
        if (ratio[i] > b.hi) { b.hi = ratio[i]; b.at_hi = t[i]; }
    }
    return b;
}

void MonotoneTable::validate() const {
    if (x.size() != y.size() || x.size() < 2) throw error("table needs >= 2 rows");
    for (std::size_t i = 0; i + 1 < x.size(); ++i) {
        if (x[i] >= x[i + 1]) throw error("table abscissa must increase");
        if (y[i] >= y[i + 1]) throw error("table must be strictly increasing");
    }
}

double MonotoneTable::eval(double xq) const {
    if (xq <= x.front()) return y.front();
    if (xq >= x.back()) return y.back();
    auto it = std::upper_bound(x.begin(), x.end(), xq);
    std::size_t i = static_cast<std::size_t>(it - x.begin());
    double t = (xq - x[i - 1]) / (x[i] - x[i - 1]);
    return y[i - 1] + t * (y[i] - y[i - 1]);
}

double MonotoneTable::inverse(double yq) const {
    if (yq <= y.front()) return x.front();
    if (yq >= y.back()) return x.back();
    auto it = std::upper_bound(y.begin(), y.end(), yq);
    std::size_t i = static_cast<std::size_t>(it - y.begin());
    double t = (yq - y[i - 1]) / (y[i] - y[i - 1]);
    return x[i - 1] + t * (x[i] - x[i - 1]);
}

MonotoneTable invert_monotone_bound(const MonotoneTable& bound, int shift) {
    bound.validate();
    if (shift != 1 && shift != -1) throw error("shift must be +1 or -1");
    MonotoneTable inv;
    inv.x.reserve(bound.x.size());
    inv.y.reserve(bound.x.size());
    for (std::size_t i = 0; i < bound.x.size(); ++i) {
        double u = bound.y[i];
        inv.x.push_back(u);
        inv.y.push_back(bound.inverse(u + static_cast<double>(shift)));
    }
    // generalized inverse may flatten at the ends; keep it strictly monotone
    for (std::size_t i = 1; i < inv.y.size(); ++i)
        if (inv.y[i] <= inv.y[i - 1])
            inv.y[i] = std::nextafter(inv.y[i - 1], 1e300);
    return inv;
}

// H_bar keeps every non-shallow scale (the limsup excursions recur at the
// resonant radii, which sit mid-grid at desk depth); H_under is read off the
// deepest resolved third, where the O(1) constants in tau stop polluting the
// ratio.
HittingIndicators hitting_indicators(const HittingRecord& rec, std::size_t min_resolved,
                                     std::size_t skip_shallow) {
    std::vector<double> ratios;
    for (std::size_t i = 0; i < rec.level.size(); ++i) {
        if (i < skip_shallow) continue;
        if (rec.censored[i] || rec.tau[i] < 1) continue;
        double denom = rec.levels_are_radii ? -std::log(rec.level[i])
                                            : std::log(rec.level[i]);
        if (denom <= 0.0) continue;
        ratios.push_back(std::log(static_cast<double>(rec.tau[i])) / denom);
    }
    if (ratios.size() < min_resolved)
        throw TooCensored("fewer resolved levels than required");
    HittingIndicators h;
    h.H_bar = *std::max_element(ratios.begin(), ratios.end());
    std::size_t deep = std::max<std::size_t>(1, ratios.size() / 3);
    h.H_under = *std::min_element(ratios.end() - static_cast<std::ptrdiff_t>(deep),
                                  ratios.end());
    return h;
}

SlopeFit hitting_exponent(const HittingRecord& rec, std::size_t min_resolved) {
    std::vector<double> xs, ys;
    for (std::size_t i = 0; i < rec.level.size(); ++i) {
        if (rec.censored[i] || rec.tau[i] < 1) continue;
        xs.push_back(rec.levels_are_radii ? -std::log(rec.level[i])
                                          : std::log(rec.level[i]));
        ys.push_back(std::log(static_cast<double>(rec.tau[i])));
    }
    if (xs.size() < min_resolved) throw TooCensored("fewer resolved levels than required");
    return ols(xs, ys);
}

double median_of(std::vector<double> v) {
    if (v.empty()) throw error("median of empty set");
    std::sort(v.begin(), v.end());
    std::size_t n = v.size();
    return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

EnsembleStats ensemble_aggregate(std::vector<double> per_orbit, double lo, double hi) {
    if (per_orbit.size() < 20) throw error("ensemble aggregation needs >= 20 orbits");
    EnsembleStats s;
    s.values = per_orbit;
    std::vector<double> sorted = per_orbit;
    std::sort(sorted.begin(), sorted.end());
    std::size_t n = sorted.size();
    s.median = n % 2 == 1 ? sorted[n / 2] : 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);
    s.iqr = sorted[(3 * n) / 4] - sorted[n / 4];
    std::size_t pass = 0;
    for (double v : per_orbit) pass += (v >= lo && v <= hi) ? 1 : 0;
    s.pass_fraction = static_cast<double>(pass) / static_cast<double>(n);
    return s;
}

ScalingReport ScalingReport::from_per_orbit(std::string name, std::string law,
                                            double predicted, double tol_lo,
                                            double tol_hi,
                                            const std::vector<double>& lo_i,
                                            const std::vector<double>& mid_i,
                                            const std::vector<double>& hi_i) {
    if (lo_i.size() != mid_i.size() || mid_i.size() != hi_i.size())
        throw error("per-orbit vectors must align");
    for (std::size_t i = 0; i < lo_i.size(); ++i)
        if (!(lo_i[i] <= mid_i[i] && mid_i[i] <= hi_i[i]))
            throw error("per-orbit values must satisfy lo <= mid <= hi");
    ScalingReport r;
    r.name = std::move(name);
    r.law = std::move(law);
    r.predicted = predicted;
    r.tol_lo = tol_lo;
    r.tol_hi = tol_hi;
    r.ensemble = ensemble_aggregate(mid_i, tol_lo, tol_hi);
    r.fitted = r.ensemble.median;
    // medians preserve pointwise order, so tail_lo <= fitted <= tail_hi
    r.tail_lo = median_of(lo_i);
    r.tail_hi = median_of(hi_i);
    r.pass = r.fitted >= tol_lo && r.fitted <= tol_hi;
    return r;
}

} // namespace ergolab
