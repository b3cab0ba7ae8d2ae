#include "ergolab/induced.hpp"

#include <algorithm>
#include <cmath>

#include "ergolab/rng.hpp"

namespace ergolab {

InducedSystem::InducedSystem(double alpha) : alpha_(alpha), c2a_(std::exp2(alpha)) {
    if (alpha < 1.0) throw error("induced LSV machinery expects alpha >= 1");
    x_ = {0.5};
    zoff_ = {0.5};   // z_0 = 1
}

double InducedSystem::invert_left_branch(double target, double hi) {
    // g(x) = x (1 + 2^a x^a) is increasing on [0, 1/2]; root of g(x) = target
    auto g = [&](double x) {
        double xa = alpha_ == 1.0 ? x : (alpha_ == 2.0 ? x * x : std::pow(x, alpha_));
        return x * (1.0 + c2a_ * xa) - target;
    };
    double lo = 0.0;
    if (g(hi) < 0.0) throw error("left-branch root not bracketed (numerical policy failure)");
    for (int i = 0; i < 60 && hi - lo > 1e-14; ++i) {
        double mid = 0.5 * (lo + hi);
        (g(mid) < 0.0 ? lo : hi) = mid;
    }
    double x = 0.5 * (lo + hi);
    for (int i = 0; i < 2; ++i) {   // two Newton polish steps
        double xa = alpha_ == 1.0 ? x : (alpha_ == 2.0 ? x * x : std::pow(x, alpha_));
        double gp = 1.0 + c2a_ * (alpha_ + 1.0) * xa;
        x -= (x * (1.0 + c2a_ * xa) - target) / gp;
    }
    return x;
}

void InducedSystem::extend(std::size_t n) {
    while (x_.size() <= n) {
        double xn = x_.back();
        x_.push_back(invert_left_branch(xn, xn));
        // f(z_n) = x_{n-1} on the affine branch: z_n - 1/2 = x_{n-1}/2 exactly
        zoff_.push_back(0.5 * x_[x_.size() - 2]);
    }
}

double InducedSystem::x(std::size_t n) {
    extend(n);
    return x_[n];
}

double InducedSystem::z_offset(std::size_t n) {
    extend(n);
    return zoff_[n];
}

double InducedSystem::z(std::size_t n) { return 0.5 + z_offset(n); }

double InducedSystem::branch_length(std::size_t n) {
    if (n < 1) throw error("branch index starts at 1");
    extend(n);
    return zoff_[n - 1] - zoff_[n];
}

double InducedSystem::tail_probability(std::size_t n) {
    if (n <= 1) return 1.0;
    return x(n - 2);   // 2 * zoff_{n-1}
}

std::uint64_t InducedSystem::return_time_of_entry(double w) {
    if (!(w >= 0.0 && w < 0.5)) throw error("entry point must lie in [0, 1/2)");
    while (w < x_.back() && x_.size() < table_budget) {
        extend(std::min(table_budget, x_.size() * 2));
    }
    if (w >= x_.back()) {
        // n = min{ m >= 1 : x_m <= w }, then w in [x_n, x_{n-1}) automatically.
        // The reversed table is increasing; the last element <= w marks n.
        auto it = std::upper_bound(x_.rbegin(), x_.rend(), w);
        auto j = static_cast<std::size_t>(it - x_.rbegin()) - 1;
        return static_cast<std::uint64_t>((x_.size() - 1) - j);
    }
    // Beyond the table: invert the continuum flow du/dn = alpha 2^alpha with
    // u = x^-alpha, anchored at the deepest exact entry. Relative error of the
    // returned index is below 1e-9 in this regime.
    std::size_t N = x_.size() - 1;
    double uN = std::pow(x_[N], -alpha_);
    double uw = std::pow(w, -alpha_);
    double n_est = static_cast<double>(N) + (uw - uN) / (alpha_ * c2a_);
    return static_cast<std::uint64_t>(n_est);
}

std::uint64_t InducedSystem::sample_return(std::mt19937_64& rng) {
    // y uniform on Y = [1/2, 1): w = f(y) = 2y - 1 is uniform on [0, 1)
    double w = unit_uniform_generic(rng);
    if (w >= 0.5) return 1;
    return 1 + return_time_of_entry(w);
}

ReturnStream::ReturnStream(const MapSpec& lsv, double y0) : map_(lsv), y_(y0) {
    if (lsv.kind != MapKind::LSV || lsv.alpha < 1.0)
        throw error("return stream is defined for LSV with alpha >= 1");
    if (!(y0 >= 0.5 && y0 < 1.0)) throw error("y0 must lie in [1/2, 1)");
}

ReturnEvent ReturnStream::next() {
    std::uint64_t R = 0;
    double y = y_;
    do {
        y = lsv_apply(map_.alpha, map_.two_pow_alpha, y);
        ++R;
    } while (y < 0.5);
    y_ = y;
    return ReturnEvent{y, R};
}

FastReturnStream::FastReturnStream(InducedSystem& sys, double y0, bool enable_fast_forward)
    : sys_(sys), y_(y0), fast_(enable_fast_forward) {
    if (!(y0 >= 0.5 && y0 < 1.0)) throw error("y0 must lie in [1/2, 1)");
}

ReturnEvent FastReturnStream::next() {
    double alpha = sys_.alpha();
    double c2a = std::exp2(alpha);
    double w = 2.0 * y_ - 1.0;
    if (w >= 0.5) {
        y_ = w;
        return ReturnEvent{w, 1};
    }
    std::uint64_t m = sys_.return_time_of_entry(w);
    if (!fast_) {
        double x = w;
        for (std::uint64_t j = 0; j < m; ++j) x = lsv_apply(alpha, c2a, x);
        y_ = x;
        return ReturnEvent{x, m + 1};
    }
    // Exit point from the flow phase of w within its entry branch, anchored
    // on the exact table endpoints: u = x^-alpha is affine in the continuum
    // clock, and f^m maps [x_m, x_{m-1}) onto [1/2, 1) monotonically.
    double um = std::pow(sys_.x(m), -alpha);
    double um1 = std::pow(sys_.x(m - 1), -alpha);
    double s = (um - std::pow(w, -alpha)) / (um - um1);
    if (s < 0.0) s = 0.0;
    if (s > 1.0) s = 1.0;
    double exit = 0.5 + 0.5 * s;
    if (exit >= 1.0) exit = std::nextafter(1.0, 0.0);
    y_ = exit;
    return ReturnEvent{exit, m + 1};
}

} // namespace ergolab
