#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <random>
#include <vector>

#include "ergolab/maps.hpp"

namespace ergolab {

// Which coordinate of the state the observable reads. Distances are absolute
// difference on the interval coordinate and circle distance on fibers.
enum class Coord { Base, Fiber0, Fiber1 };

enum class ObsKind {
    DistPower,          // phi = d(x, xtilde)^{-k}
    NegLogDist,         // phi = -log d(x, xtilde)
    PsiOfDist,          // phi = psi(d(x, xtilde)), psi tabulated decreasing
    ReturnTime,         // phi = R on an induced system (evaluated there)
    BallIndicator,      // 1_{B(center, radius)}
    SymbolicCodingDist, // d~ to a target digit sequence
};

// Strictly decreasing tabulated function with monotone linear interpolation;
// inversion by binary search.
struct PsiTable {
    std::vector<double> r;     // increasing radii
    std::vector<double> val;   // strictly decreasing values

    double operator()(double d) const;
    double inverse(double u) const;   // largest r with psi(r) >= u
    void validate() const;
};

struct ObservableSpec {
    ObsKind kind = ObsKind::DistPower;
    Coord coord = Coord::Base;
    double xtilde = 0.0;      // singular point / ball center on the chosen coord
    Frac128 xtilde_f{};       // exact center when coord is a fiber
    double k = 1.0;           // DistPower exponent
    double radius = 0.0;      // BallIndicator
    PsiTable psi;
    std::vector<std::uint8_t> target_digits;   // SymbolicCodingDist
    // suplevel scaling exponent: mu{phi >= u} ~ u^{-alpha_phi}
    double alpha_phi = std::numeric_limits<double>::quiet_NaN();

    static ObservableSpec dist_power(Coord c, double xtilde, double k,
                                     double local_dim = 1.0);
    static ObservableSpec dist_power_fiber(Coord c, Frac128 xtilde, double k);
    static ObservableSpec neg_log_dist(Coord c, double xtilde);
    static ObservableSpec psi_of_dist(Coord c, double xtilde, PsiTable psi);
    static ObservableSpec ball_indicator(Coord c, double center, double radius);
    // phi(x) = 2^{-n*}, the coding distance of the base coordinate to a
    // target digit sequence ({1,1,1,...} encodes the point 1)
    static ObservableSpec symbolic_coding(std::vector<std::uint8_t> target);

    double distance_to_center(const Point& p) const;
};

inline constexpr double kSingularValue = std::numeric_limits<double>::infinity();

// Finite unless p sits exactly on the singular point, in which case the
// designated +infinity is returned and callers must handle it.
double eval(const ObservableSpec& obs, const Point& p);

// Binary digits of x through the doubling coding: digit i is 1 iff
// T^{i-1}(x) in [1/2,1). Dyadic inputs get their terminating expansion.
std::vector<std::uint8_t> binary_digits(double x, std::size_t depth);

struct CodingDistance {
    double value = 0.0;
    bool truncated = false;   // no differing digit within depth
};

// d~(x,y) = 2^{-n*} with n* the first differing binary digit.
CodingDistance symbolic_coding_distance(double x, double y, std::size_t depth);

struct InsufficientTailMass : error {
    using error::error;
};

// Least-squares slope of log mu_hat(A_n) against -log n over a geometric
// level grid, A_n = { phi >= n }. The sampler draws from a reference measure
// equivalent to mu on the support. Errors if fewer than 100 samples reach the
// top level.
double alpha_phi_empirical(const ObservableSpec& obs,
                           const std::function<Point(std::mt19937_64&)>& sampler,
                           const std::vector<double>& levels,
                           std::size_t n_samples, std::uint64_t seed);

// Same estimator for a plain scalar observable (used for induced return times).
double alpha_phi_empirical_scalar(const std::function<double(std::mt19937_64&)>& draw,
                                  const std::vector<double>& levels,
                                  std::size_t n_samples, std::uint64_t seed);

} // namespace ergolab
