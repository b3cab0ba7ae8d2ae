#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "ergolab/maps.hpp"
#include "ergolab/schedule.hpp"

namespace ergolab {

// First-return machinery of the LSV map over Y = [1/2, 1).
//
// x_{-1} = 1, x_0 = 1/2, f(x_{n+1}) = x_n with x_n in (0,1/2) strictly
// decreasing to 0; z_0 = 1, f(z_n) = x_{n-1} with z_n in [1/2,1] strictly
// decreasing to 1/2; Y_n = [z_n, z_{n-1}) carries return time exactly n.
//
// z is stored as the offset z - 1/2 = x_{n-1}/2 (exact in floating point),
// which keeps f(z_n) = 2 z_n - 1 = x_{n-1} exact where the plain 0.5 + eps
// representation would lose ~30k ulps to cancellation.
class InducedSystem {
  public:
    explicit InducedSystem(double alpha);

    double alpha() const { return alpha_; }

    // extends tables to index n with bracketed bisection + two Newton steps
    void extend(std::size_t n);
    std::size_t table_depth() const { return x_.size() - 1; }

    double x(std::size_t n);               // x_n, n >= 0 (x(0) = 1/2)
    double z(std::size_t n);               // z_n = 1/2 + zoff_n
    double z_offset(std::size_t n);        // z_n - 1/2, exact tail of Leb{R >= n+1}/1
    double branch_length(std::size_t n);   // |Y_n| = z_{n-1} - z_n, n >= 1

    // Leb{ y in Y : R(y) >= n } / Leb(Y), n >= 1 (exact from the z table)
    double tail_probability(std::size_t n);

    // n such that w in [x_n, x_{n-1}): the laminar escape time from w.
    // Extends the table as needed up to table_budget; beyond it, inverts the
    // continuum approximation anchored at the deepest table entry (relative
    // error < 1e-9 in that regime).
    std::uint64_t return_time_of_entry(double w);

    // First-return time of y ~ Uniform(Y): R = 1 if f(y) >= 1/2, else
    // 1 + return_time_of_entry(f(y)). Exact in distribution.
    std::uint64_t sample_return(std::mt19937_64& rng);

    std::size_t table_budget = 1u << 22;

  private:
    double invert_left_branch(double target, double hi);
    double alpha_;
    double c2a_;               // 2^alpha
    std::vector<double> x_;    // x_[n] = x_n
    std::vector<double> zoff_; // zoff_[n] = z_n - 1/2 = x_{n-1}/2
};

struct ReturnEvent {
    double y;            // return point in [1/2, 1)
    std::uint64_t R;     // first-return time
};

// (y_j, R_j) stream produced by the same forward iteration as step();
// prefix sums of R_j equal the clock times Q(j, y0) at which the orbit
// revisits Y.
class ReturnStream {
  public:
    ReturnStream(const MapSpec& lsv, double y0);
    ReturnEvent next();
    double current() const { return y_; }

  private:
    MapSpec map_;
    double y_;
};

// Laminar fast-forward (opt-in): return time from the exact tables, exit
// point from the continuum approximation dx/dk = 2^a x^{a+1} re-anchored on
// the entry branch. The return time is exact; the exit point carries the
// approximation bias (measured mean ~0.04 of the return interval at
// alpha = 2). Off the acceptance path: every acceptance run iterates the
// laminar phase step by step.
class FastReturnStream {
  public:
    FastReturnStream(InducedSystem& sys, double y0, bool enable_fast_forward);
    ReturnEvent next();

  private:
    InducedSystem& sys_;
    double y_;
    bool fast_;
};

} // namespace ergolab
