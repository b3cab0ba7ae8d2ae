#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <utility>
#include <vector>

#include "ergolab/fixed128.hpp"
#include "ergolab/schedule.hpp"

namespace ergolab {

using BigInt = boost::multiprecision::cpp_int;

// natural log of a cpp_int that may exceed double range
double log_big(const BigInt& q);

// floor(e^t) as a BigInt, t in nats (top-53-bit accuracy)
BigInt big_floor_exp(double t);

// theta = [0; a_1, a_2, ...] in (0,1), partial quotients a_k >= 1.
// Quotients beyond the stored list repeat the last entry, so a finite list
// denotes a definite quadratic irrational: {1} is the golden mean, {2} is
// sqrt(2) - 1. Convergents are exact integers; the determinant identity
// p_n q_{n-1} - p_{n-1} q_n = (-1)^{n-1} is checked on every extension.
class ContinuedFraction {
  public:
    explicit ContinuedFraction(std::vector<BigInt> quotients);
    static ContinuedFraction from_u64(const std::vector<std::uint64_t>& qs);

    const std::vector<BigInt>& quotients() const { return a_; }
    BigInt quotient(std::size_t k) const;   // a_k, k >= 1

    void ensure_depth(std::size_t n);
    std::size_t depth() const { return p_.size() - 1; }

    const BigInt& p(std::size_t n) const;   // n >= 0, p_0 = 0
    const BigInt& q(std::size_t n) const;   // q_0 = 1

    // value as an exact 128-bit fraction of the circle, taken from the first
    // convergent with q_n > 2^96; exact at working resolution for n <= 2^30
    Frac128 fixed128();
    double approx();

  private:
    std::vector<BigInt> a_;
    std::vector<BigInt> p_, q_;
};

std::vector<std::pair<BigInt, BigInt>> convergents(ContinuedFraction& cf, std::size_t n);

struct TypeEstimate {
    double gamma_hat = 0.0;
    std::size_t at_index = 0;
};

// Growth-ratio estimate of the Diophantine type: max over the deep third of
// log(q_{n+1}/q_n) / log(q_n/q_{n-1}). For q_{n+1} ~ q_n^gamma both this and
// log q_{n+1}/log q_n tend to gamma; the increment form sheds the additive
// O(1/n) bias that dominates the plain ratio at desk depths (golden mean at
// depth 30 reads 1.000 here versus 1.03 raw).
TypeEstimate type_estimate(ContinuedFraction& cf, std::size_t depth);

// Partial quotients a_{n+1} = max(1, floor(q_n^{gamma-1})), so that
// log q_{n+1} / log q_n -> gamma.
ContinuedFraction construct_type(double gamma, std::size_t depth);

struct YxiPair {
    ContinuedFraction theta;
    ContinuedFraction theta_prime;
    bool certificate = false;   // exact integer check of both inequality chains
};

// Interleaved pair with q'_n >= q_n^xi and q_{n+1} >= (q'_n)^xi for n <= depth,
// built greedily with the smallest admissible quotients.
YxiPair construct_Y_xi_pair(double xi, std::size_t depth);

// ||q theta||: distance of q*theta to the nearest integer, computed exactly
// against a deep convergent P/Q with Q > 2^96.
double rotation_distance(ContinuedFraction& cf, std::uint64_t q);

// Angle payload carried by map specs: the quotient list plus the exact
// fixed-point value. Never just a floating approximation.
struct AngleSpec {
    std::vector<BigInt> quotients;
    Frac128 value;
    double approx = 0.0;

    static AngleSpec from_cf(ContinuedFraction& cf);
    static AngleSpec from_quotients(std::vector<std::uint64_t> qs);
    static AngleSpec golden();
    static AngleSpec of_type(double gamma, std::size_t depth = 8);
};

} // namespace ergolab
