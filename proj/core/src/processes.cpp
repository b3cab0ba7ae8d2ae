#include "ergolab/processes.hpp"

#include <algorithm>
#include <cmath>

namespace ergolab {

bool ProcessTrace::nondecreasing() const {
    for (std::size_t i = 0; i + 1 < v.size(); ++i)
        if (v[i + 1] < v[i]) return false;
    return true;
}

bool ProcessTrace::nonincreasing() const {
    for (std::size_t i = 0; i + 1 < v.size(); ++i)
        if (v[i + 1] > v[i]) return false;
    return true;
}

bool ProcessTrace::monotone_ok() const {
    switch (kind) {
        case TraceKind::birkhoff_sum:
        case TraceKind::maxima:
        case TraceKind::run_length_0:
        case TraceKind::run_length_1:
        case TraceKind::bc_counter:
        case TraceKind::erdos_renyi:
            return nondecreasing();
        case TraceKind::min_distance:
            return nonincreasing();
        default:
            return true;
    }
}

BirkhoffMaxMonitor::BirkhoffMaxMonitor(ObservableSpec obs) : obs_(std::move(obs)) {
    s_trace_.kind = TraceKind::birkhoff_sum;
    m_trace_.kind = TraceKind::maxima;
}

// at_checkpoint(n) fires after observe(n), so the *_excl_ values cover the
// states at times 0..n-1: exactly S_n and M_n.
void BirkhoffMaxMonitor::observe(std::uint64_t k, const Point& s) {
    sum_excl_ = sum_;
    max_excl_ = max_;
    double v = eval(obs_, s);
    if (v == kSingularValue) throw SingularHit(k);
    sum_ += v;
    if (v > max_) max_ = v;
}

void BirkhoffMaxMonitor::at_checkpoint(std::uint64_t n) {
    s_trace_.t.push_back(n);
    s_trace_.v.push_back(sum_excl_);
    m_trace_.t.push_back(n);
    m_trace_.v.push_back(max_excl_);
}

std::vector<ProcessTrace> BirkhoffMaxMonitor::traces() const {
    return {s_trace_, m_trace_};
}

std::size_t HittingRecord::resolved() const {
    std::size_t r = 0;
    for (bool c : censored) r += c ? 0 : 1;
    return r;
}

HittingMonitor HittingMonitor::balls(Coord coord, double center, double r0,
                                     double lambda, std::size_t count) {
    if (!(lambda > 0.0 && lambda < 1.0)) throw error("radius ratio must be in (0,1)");
    HittingMonitor m;
    m.ball_mode_ = true;
    m.coord_ = coord;
    m.center_ = center;
    m.center_f_ = Frac128::from_double(center);
    double r = r0;
    for (std::size_t i = 0; i < count; ++i, r *= lambda) m.level_.push_back(r);
    m.tau_.assign(count, 0);
    return m;
}

HittingMonitor HittingMonitor::thresholds(ObservableSpec obs, std::vector<double> grid) {
    std::sort(grid.begin(), grid.end());
    HittingMonitor m;
    m.ball_mode_ = false;
    m.obs_ = std::move(obs);
    m.level_ = std::move(grid);
    m.tau_.assign(m.level_.size(), 0);
    return m;
}

void HittingMonitor::observe(std::uint64_t k, const Point& s) {
    if (next_ >= level_.size()) return;
    if (ball_mode_) {
        double d = coord_ == Coord::Base ? std::fabs(s.base - center_)
                 : coord_ == Coord::Fiber0 ? circle_dist(s.fiber[0], center_f_)
                                           : circle_dist(s.fiber[1], center_f_);
        while (next_ < level_.size() && d <= level_[next_]) {
            tau_[next_] = k;
            ++next_;
        }
    } else {
        double v = eval(obs_, s);
        while (next_ < level_.size() && v >= level_[next_]) {
            tau_[next_] = k;
            ++next_;
        }
    }
}

HittingRecord HittingMonitor::finish(std::uint64_t) const {
    HittingRecord rec;
    rec.level = level_;
    rec.tau = tau_;
    rec.levels_are_radii = ball_mode_;
    rec.censored.assign(level_.size(), false);
    for (std::size_t i = next_; i < level_.size(); ++i) rec.censored[i] = true;
    return rec;
}

MinDistanceMonitor::MinDistanceMonitor(Coord coord, double y)
    : coord_(coord), y_(y), yf_(Frac128::from_double(y)), fiber_(coord != Coord::Base) {
    trace_.kind = TraceKind::min_distance;
}

MinDistanceMonitor::MinDistanceMonitor(Coord coord, Frac128 y)
    : coord_(coord), y_(y.to_double()), yf_(y), fiber_(coord != Coord::Base) {
    trace_.kind = TraceKind::min_distance;
}

void MinDistanceMonitor::observe(std::uint64_t, const Point& s) {
    double d = coord_ == Coord::Base ? std::fabs(s.base - y_)
             : coord_ == Coord::Fiber0 ? circle_dist(s.fiber[0], yf_)
                                       : circle_dist(s.fiber[1], yf_);
    if (d < dmin_) dmin_ = d;
}

void MinDistanceMonitor::at_checkpoint(std::uint64_t n) {
    trace_.t.push_back(n);
    trace_.v.push_back(dmin_);
}

RunLengthMonitor::RunLengthMonitor(bool store_symbols, std::size_t store_cap)
    : store_(store_symbols), cap_(store_cap) {
    xi1_.kind = TraceKind::run_length_1;
    xi0_.kind = TraceKind::run_length_0;
}

// The state at time k produces symbol epsilon_{k+1}; recording the pre-update
// best at the checkpoint therefore covers exactly the first n symbols.
void RunLengthMonitor::observe(std::uint64_t k, const Point& s) {
    (void)k;
    best1_excl_ = best1_;
    best0_excl_ = best0_;
    std::uint8_t sym = s.base >= 0.5 ? 1 : 0;
    if (store_ && symbols_.size() < cap_) symbols_.push_back(sym);
    if (sym) {
        cur0_ = 0;
        if (++cur1_ > best1_) best1_ = cur1_;
    } else {
        cur1_ = 0;
        if (++cur0_ > best0_) best0_ = cur0_;
    }
}

void RunLengthMonitor::at_checkpoint(std::uint64_t n) {
    xi1_.t.push_back(n);
    xi1_.v.push_back(static_cast<double>(best1_excl_));
    xi0_.t.push_back(n);
    xi0_.v.push_back(static_cast<double>(best0_excl_));
}

BcCounterMonitor::BcCounterMonitor(double center, double zeta, double density_proxy)
    : center_(center), zeta_(zeta), inv_proxy_(1.0 / density_proxy) {
    if (!(density_proxy > 0.0)) throw error("density proxy must be positive");
    trace_.kind = TraceKind::bc_counter;
}

double ball_measure(double zeta, std::uint64_t k) {
    return std::min(1.0, std::pow(static_cast<double>(k), -zeta));
}

// Radii only shrink, so a per-block upper bound lets the hot path reject with
// one comparison; the exact radius is evaluated only near a hit.
void BcCounterMonitor::observe(std::uint64_t k, const Point& s) {
    if (k == 0) return;   // schedule starts at B_1
    if (k >= block_end_) {
        block_radius_ = 0.5 * inv_proxy_ * ball_measure(zeta_, k);
        block_end_ = k + 4096;
    }
    double d = std::fabs(s.base - center_);
    if (d > block_radius_) return;
    if (d <= 0.5 * inv_proxy_ * ball_measure(zeta_, k)) ++count_;
}

void BcCounterMonitor::at_checkpoint(std::uint64_t n) {
    trace_.t.push_back(n);
    trace_.v.push_back(static_cast<double>(count_));
}

double bc_companion_series(std::uint64_t n, double zeta, double b) {
    auto K = static_cast<std::uint64_t>(std::floor(std::pow(static_cast<double>(n), 1.0 / b)));
    double s = 0.0;
    for (std::uint64_t k = 1; k <= K; ++k) {
        auto idx = static_cast<std::uint64_t>(std::floor(std::pow(static_cast<double>(k), b)));
        if (idx < 1) idx = 1;
        s += ball_measure(zeta, idx);
    }
    return s;
}

SymbolRecorder::SymbolRecorder(std::size_t cap) : cap_(cap) {
    symbols_.reserve(std::min<std::size_t>(cap, 1u << 20));
}

void SymbolRecorder::observe(std::uint64_t, const Point& s) {
    if (symbols_.size() < cap_) symbols_.push_back(s.base >= 0.5 ? 1 : 0);
}

ReturnClockMonitor::ReturnClockMonitor() {
    trace_.kind = TraceKind::birkhoff_sum;
}

void ReturnClockMonitor::observe(std::uint64_t k, const Point& s) {
    if (s.base >= 0.5) last_in_Y_ = k;
}

void ReturnClockMonitor::at_checkpoint(std::uint64_t n) {
    trace_.t.push_back(n);
    trace_.v.push_back(static_cast<double>(last_in_Y_));
}

std::uint64_t erdos_renyi_max_window(const std::vector<std::uint8_t>& symbols,
                                     std::uint64_t n, std::uint64_t K, int j) {
    if (K > n) throw error("window K(n) must not exceed n");
    if (n > symbols.size()) throw error("symbol sequence shorter than n");
    if (K == 0) return 0;
    std::uint64_t window = 0;
    for (std::uint64_t i = 0; i < K; ++i) window += symbols[i] == j ? 1 : 0;
    std::uint64_t best = window;
    for (std::uint64_t i = K; i < n; ++i) {
        window += (symbols[i] == j ? 1u : 0u);
        window -= (symbols[i - K] == j ? 1u : 0u);
        if (window > best) best = window;
    }
    return best;
}

ProcessTrace aaronson_ratio(const ProcessTrace& s_trace, double expnt) {
    if (!(expnt > 0.0)) throw error("aaronson exponent must be positive");
    ProcessTrace r;
    r.kind = TraceKind::ratio;
    r.t = s_trace.t;
    r.v.resize(s_trace.v.size());
    for (std::size_t i = 0; i < s_trace.v.size(); ++i) {
        double a = std::pow(std::max(s_trace.v[i], 0.0), expnt);
        r.v[i] = a / static_cast<double>(s_trace.t[i]);
    }
    return r;
}

std::uint64_t leading_one_run(const std::vector<std::uint8_t>& symbols, std::uint64_t i) {
    std::uint64_t run = 0;
    while (i + run < symbols.size() && symbols[i + run] == 1) ++run;
    return run;
}

std::uint64_t symbolic_hit_time_near_one(const std::vector<std::uint8_t>& symbols,
                                         std::uint64_t n) {
    // f^i(x) >= 1 - 2^-n  <=>  symbols[i .. i+n-1] all 1, scanning i >= 1
    std::uint64_t consecutive = 0;
    for (std::uint64_t j = 1; j < symbols.size(); ++j) {
        consecutive = symbols[j] == 1 ? consecutive + 1 : 0;
        if (consecutive >= n) return j - n + 1;
    }
    return 0;
}

std::uint64_t brute_force_run_length(const std::vector<std::uint8_t>& symbols,
                                     std::uint64_t n, int j) {
    std::uint64_t best = 0, cur = 0;
    std::uint64_t m = std::min<std::uint64_t>(n, symbols.size());
    for (std::uint64_t i = 0; i < m; ++i) {
        cur = symbols[i] == j ? cur + 1 : 0;
        if (cur > best) best = cur;
    }
    return best;
}

} // namespace ergolab
