#pragma once

#include <cstdint>
#include <memory>
#include <random>
#include <vector>

#include "ergolab/schedule.hpp"

namespace ergolab {

// Synthetic Young tower over a countable full-branch piecewise-affine base
// with prescribed return-tail exponent beta in (0,1): branch i has length
// l_i proportional to i^{-beta-1} (so nu{R = i} ~ i^{-beta-1}), the base map
// sends each branch affinely onto [0,1), and R on branch i equals i.
// Branches are enumerated up to i_max; the residual tail mass is folded into
// the last branch, and the folded mass is reported.
class TowerSpec {
  public:
    TowerSpec(double beta, std::size_t i_max = 10'000'000);

    double beta() const { return beta_; }
    std::size_t i_max() const { return i_max_; }
    double folded_tail_mass() const { return folded_; }

    double branch_length(std::size_t i) const;          // l_i, i >= 1
    double branch_start(std::size_t i) const;           // cumulative start
    std::size_t branch_of(double x) const;              // binary search
    double measure_tail(std::size_t n) const;           // nu{R >= n}
    std::size_t branches_intersecting(double lo, double hi) const;

  private:
    double beta_;
    std::size_t i_max_;
    double folded_;
    std::vector<double> cum_;   // cum_[i] = sum of l_1..l_i, cum_[0] = 0
};

struct TowerPoint {
    double base = 0.0;          // [0,1)
    std::uint64_t level = 0;    // 0 <= level < R(branch of base)
    std::uint64_t branch = 1;   // cached branch index of base
};

TowerPoint tower_point(const TowerSpec& spec, double base, std::uint64_t level = 0);

// Climb one level, or apply the base map and reset the level.
TowerPoint tower_step(const TowerSpec& spec, const TowerPoint& p);

struct TowerBcResult {
    std::vector<std::uint64_t> checkpoints;
    std::vector<std::vector<double>> ratio_lower;   // per orbit: count / lower series
    std::vector<std::vector<double>> ratio_upper;   // per orbit: count / upper series
    std::vector<std::uint64_t> final_count;
    double fraction_in_sandwich = 0.0;   // both bounds hold at the final checkpoint
    double fraction_lower_ok = 0.0;      // min over tail of count/lower >= threshold
};

// Shrinking-target count on the tower base: targets B_k around center with
// nu(B_k) = min(1, k^{-zeta}), hits counted when the orbit is at level 0 with
// base in B_k at clock time k. Companion series computed analytically.
// Throws if the largest target intersects more than max_cells branch cells.
TowerBcResult tower_bc_experiment(const TowerSpec& spec, double center, double zeta,
                                  double eps, std::uint64_t n_max,
                                  std::size_t ensemble, std::uint64_t seed,
                                  int threads, double lower_threshold,
                                  double tail_fraction = 0.25,
                                  std::size_t max_cells = 10'000);

double tower_companion_series(const TowerSpec& spec, std::uint64_t n, double zeta,
                              double b);

} // namespace ergolab
