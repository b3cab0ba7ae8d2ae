#pragma once

#include <cstdint>
#include <limits>
#include <memory>
#include <vector>

#include "ergolab/maps.hpp"
#include "ergolab/observables.hpp"
#include "ergolab/schedule.hpp"

namespace ergolab {

enum class TraceKind {
    birkhoff_sum,
    maxima,
    min_distance,
    run_length_0,
    run_length_1,
    bc_counter,
    erdos_renyi,
    state,
    ratio,
};

struct ProcessTrace {
    TraceKind kind = TraceKind::state;
    std::vector<std::uint64_t> t;   // checkpoint times, increasing
    std::vector<double> v;          // one value per checkpoint

    bool nondecreasing() const;
    bool nonincreasing() const;
    // the monotonicity each kind promises (birkhoff of phi >= 0, maxima,
    // counters: nondecreasing; min_distance: nonincreasing)
    bool monotone_ok() const;
};

// A monitor sees every state of one deterministic pass in order and records
// its summary at each checkpoint. observe(k, state) is called for k = 0..n_max
// with state = f^k(x0); at_checkpoint(n) fires right after observe(n, .).
struct Monitor {
    virtual ~Monitor() = default;
    virtual void observe(std::uint64_t k, const Point& s) = 0;
    virtual void at_checkpoint(std::uint64_t n) = 0;
    virtual std::vector<ProcessTrace> traces() const = 0;
};

struct SingularHit : error {
    std::uint64_t at_time;
    explicit SingularHit(std::uint64_t t)
        : error("observable hit its singular point; redraw the seed"), at_time(t) {}
};

// S_n = sum_{k<n} phi(f^k x) and M_n = max_{k<n} phi(f^k x); at checkpoint n
// the recorded values exclude the state at time n itself.
class BirkhoffMaxMonitor : public Monitor {
  public:
    explicit BirkhoffMaxMonitor(ObservableSpec obs);
    void observe(std::uint64_t k, const Point& s) override;
    void at_checkpoint(std::uint64_t n) override;
    std::vector<ProcessTrace> traces() const override;
    double sum_before_current() const { return sum_excl_; }
    double max_before_current() const { return max_excl_; }

  private:
    ObservableSpec obs_;
    double sum_ = 0.0, sum_excl_ = 0.0;
    double max_ = -std::numeric_limits<double>::infinity(), max_excl_ = max_;
    ProcessTrace s_trace_, m_trace_;
};

struct HittingRecord {
    std::vector<double> level;        // radii (decreasing) or thresholds (increasing)
    std::vector<std::uint64_t> tau;   // first time, valid where !censored
    std::vector<bool> censored;
    bool levels_are_radii = true;

    std::size_t resolved() const;
};

// First-passage times tau = min{ n >= 0 : f^n(x) within level }, censored at
// the horizon. Two target families: shrinking balls B(center, r_k) with
// r_k = r0 * lambda^k, or a threshold grid on an observable.
class HittingMonitor : public Monitor {
  public:
    static HittingMonitor balls(Coord coord, double center, double r0, double lambda,
                                std::size_t count);
    static HittingMonitor thresholds(ObservableSpec obs, std::vector<double> grid);

    void observe(std::uint64_t k, const Point& s) override;
    void at_checkpoint(std::uint64_t) override {}
    std::vector<ProcessTrace> traces() const override { return {}; }
    HittingRecord finish(std::uint64_t horizon) const;
    bool all_resolved() const { return next_ >= level_.size(); }

    // exact duality partner: tau_u < n  <=>  M_n >= u
    std::uint64_t tau_at_level(std::size_t i) const { return tau_[i]; }

  private:
    HittingMonitor() = default;
    bool ball_mode_ = true;
    Coord coord_ = Coord::Base;
    double center_ = 0.0;
    Frac128 center_f_{};
    ObservableSpec obs_;
    std::vector<double> level_;
    std::vector<std::uint64_t> tau_;
    std::size_t next_ = 0;   // smallest unresolved level index
};

// d_n = min_{0<=i<=n} d(f^i x, y), inclusive of time n.
class MinDistanceMonitor : public Monitor {
  public:
    MinDistanceMonitor(Coord coord, double y);
    MinDistanceMonitor(Coord coord, Frac128 y);
    void observe(std::uint64_t k, const Point& s) override;
    void at_checkpoint(std::uint64_t n) override;
    std::vector<ProcessTrace> traces() const override { return {trace_}; }
    double current() const { return dmin_; }

  private:
    Coord coord_;
    double y_ = 0.0;
    Frac128 yf_{};
    bool fiber_ = false;
    double dmin_ = std::numeric_limits<double>::infinity();
    ProcessTrace trace_;
};

// Longest run of symbol j in the first n coding symbols; symbol epsilon_k = 1
// iff f^{k-1}(x) in [1/2,1). O(1) per step. Optionally stores the symbol
// sequence for exact post-hoc checks.
class RunLengthMonitor : public Monitor {
  public:
    explicit RunLengthMonitor(bool store_symbols = false, std::size_t store_cap = 0);
    void observe(std::uint64_t k, const Point& s) override;
    void at_checkpoint(std::uint64_t n) override;
    std::vector<ProcessTrace> traces() const override { return {xi1_, xi0_}; }
    std::uint64_t best(int j) const { return j == 1 ? best1_excl_ : best0_excl_; }
    const std::vector<std::uint8_t>& symbols() const { return symbols_; }

  private:
    std::uint64_t cur1_ = 0, best1_ = 0, cur0_ = 0, best0_ = 0;
    std::uint64_t best1_excl_ = 0, best0_excl_ = 0;
    ProcessTrace xi1_, xi0_;
    bool store_ = false;
    std::size_t cap_ = 0;
    std::vector<std::uint8_t> symbols_;
};

// Moving-target counter S_n = sum_{k<=n} 1_{B_k}(f^k x) for the schedule
// B_k = B(center, min(1, k^{-zeta}) / (2 * density_proxy)): with the proxy
// set to the invariant density at the center, the targets carry invariant
// measure k^{-zeta}, the unit the companion series is written in.
class BcCounterMonitor : public Monitor {
  public:
    BcCounterMonitor(double center, double zeta, double density_proxy = 1.0);
    void observe(std::uint64_t k, const Point& s) override;
    void at_checkpoint(std::uint64_t n) override;
    std::vector<ProcessTrace> traces() const override { return {trace_}; }
    std::uint64_t count() const { return count_; }

  private:
    double center_, zeta_, inv_proxy_;
    std::uint64_t count_ = 0;
    std::uint64_t block_end_ = 0;
    double block_radius_ = 0.5;   // upper bound for radii in current block
    ProcessTrace trace_;
};

double ball_measure(double zeta, std::uint64_t k);   // Leb(B_k) = min(1, k^-zeta)

// Companion series sum_{k <= n^{1/b}} Leb(B_{floor(k^b)}) with b = alpha +- eps.
double bc_companion_series(std::uint64_t n, double zeta, double b);

// Records the base symbol sequence of a dyadic-coded orbit (bit per step).
class SymbolRecorder : public Monitor {
  public:
    explicit SymbolRecorder(std::size_t cap);
    void observe(std::uint64_t k, const Point& s) override;
    void at_checkpoint(std::uint64_t) override {}
    std::vector<ProcessTrace> traces() const override { return {}; }
    const std::vector<std::uint8_t>& symbols() const { return symbols_; }

  private:
    std::size_t cap_;
    std::vector<std::uint8_t> symbols_;
};

// Records the completed-return clock sum: value at checkpoint n is the last
// time <= n at which the orbit was in Y = [1/2,1), i.e. the Birkhoff sum of
// the return time over completed excursions.
class ReturnClockMonitor : public Monitor {
  public:
    ReturnClockMonitor();
    void observe(std::uint64_t k, const Point& s) override;
    void at_checkpoint(std::uint64_t n) override;
    std::vector<ProcessTrace> traces() const override { return {trace_}; }

  private:
    std::uint64_t last_in_Y_ = 0;
    ProcessTrace trace_;
};

// Upsilon(1_j, n, K): maximal window sum of the symbol-j indicator over
// windows of length K within the first n symbols.
std::uint64_t erdos_renyi_max_window(const std::vector<std::uint8_t>& symbols,
                                     std::uint64_t n, std::uint64_t K, int j = 1);

// a(S_n)/n with a(x) = x^expnt; acceptance asserts eventual decrease.
ProcessTrace aaronson_ratio(const ProcessTrace& s_trace, double expnt);

// --- run-length / hitting links on a stored symbol sequence (all exact) ---
// symbols[j] = epsilon_{j+1}, the coding symbol produced by the state at
// time j. Because the map agrees with the binary shift on [1/2,1), the first
// m binary digits of f^i(x) are all 1 exactly when symbols[i..i+m-1] are.

// number of consecutive 1 symbols starting at symbols[i]; the binary coding
// distance to the point 1 is d~(f^i x, 1) = 2^{-(run + 1)}
std::uint64_t leading_one_run(const std::vector<std::uint8_t>& symbols, std::uint64_t i);

// min{ i >= 1 : f^i(x) >= 1 - 2^-n } read off the symbols; 0 if censored
// within the stored horizon
std::uint64_t symbolic_hit_time_near_one(const std::vector<std::uint8_t>& symbols,
                                         std::uint64_t n);

// O(n) rescan of the longest j-run among the first n symbols (oracle)
std::uint64_t brute_force_run_length(const std::vector<std::uint8_t>& symbols,
                                     std::uint64_t n, int j);

} // namespace ergolab
