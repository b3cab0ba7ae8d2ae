#include "ergolab/diophantine.hpp"

#include <cmath>
#include <limits>

namespace ergolab {

double log_big(const BigInt& q) {
    if (q <= 0) throw error("log of nonpositive integer");
    auto bits = boost::multiprecision::msb(q);
    if (bits <= 900) return std::log(q.convert_to<double>());
    BigInt top = q >> (bits - 64);
    return std::log(top.convert_to<double>()) +
           static_cast<double>(bits - 64) * std::log(2.0);
}

BigInt big_floor_exp(double t) {
    if (t < 0.0) return 0;
    constexpr double ln2 = 0.6931471805599453;
    double lb2 = t / ln2;
    if (lb2 < 62.0)
        return BigInt(static_cast<std::uint64_t>(std::floor(std::exp(t))));
    auto shift = static_cast<long>(lb2) - 52;
    double mant = std::exp2(lb2 - static_cast<double>(shift));   // in [2^52, 2^53)
    return BigInt(static_cast<std::uint64_t>(mant)) << shift;
}

ContinuedFraction::ContinuedFraction(std::vector<BigInt> quotients)
    : a_(std::move(quotients)) {
    if (a_.empty()) throw error("need at least one partial quotient");
    for (const auto& q : a_)
        if (q < 1) throw error("partial quotients must be >= 1");
    p_ = {0};
    q_ = {1};
}

ContinuedFraction ContinuedFraction::from_u64(const std::vector<std::uint64_t>& qs) {
    std::vector<BigInt> a(qs.begin(), qs.end());
    return ContinuedFraction(std::move(a));
}

BigInt ContinuedFraction::quotient(std::size_t k) const {
    if (k == 0) throw error("quotients are indexed from 1");
    if (k <= a_.size()) return a_[k - 1];
    return a_.back();   // periodic continuation of the last quotient
}

void ContinuedFraction::ensure_depth(std::size_t n) {
    while (depth() < n) {
        std::size_t k = p_.size();   // computing p_k, q_k
        BigInt ak = quotient(k);
        BigInt pk = k == 1 ? BigInt(1) : BigInt(ak * p_[k - 1] + p_[k - 2]);
        BigInt qk = k == 1 ? ak : BigInt(ak * q_[k - 1] + q_[k - 2]);
        p_.push_back(pk);
        q_.push_back(qk);
        BigInt det = p_[k] * q_[k - 1] - p_[k - 1] * q_[k];
        BigInt expect = (k % 2 == 1) ? 1 : -1;
        if (det != expect) throw error("convergent determinant identity violated");
    }
}

const BigInt& ContinuedFraction::p(std::size_t n) const {
    if (n >= p_.size()) throw error("convergent depth not materialized");
    return p_[n];
}

const BigInt& ContinuedFraction::q(std::size_t n) const {
    if (n >= q_.size()) throw error("convergent depth not materialized");
    return q_[n];
}

Frac128 ContinuedFraction::fixed128() {
    std::size_t n = 1;
    ensure_depth(n);
    const BigInt threshold = BigInt(1) << 96;
    while (q(n) <= threshold) ensure_depth(++n);
    BigInt v = (p(n) << 128) / q(n);
    u128 out = 0;
    for (int limb = 1; limb >= 0; --limb) {
        BigInt part = (v >> (64 * limb)) & BigInt(0xffffffffffffffffULL);
        out = (out << 64) | static_cast<u128>(part.convert_to<std::uint64_t>());
    }
    return Frac128{out};
}

double ContinuedFraction::approx() { return fixed128().to_double(); }

std::vector<std::pair<BigInt, BigInt>> convergents(ContinuedFraction& cf, std::size_t n) {
    if (n < 1) throw error("need n >= 1 convergents");
    cf.ensure_depth(n);
    std::vector<std::pair<BigInt, BigInt>> out;
    for (std::size_t k = 1; k <= n; ++k) out.emplace_back(cf.p(k), cf.q(k));
    return out;
}

TypeEstimate type_estimate(ContinuedFraction& cf, std::size_t depth) {
    if (depth < 10) throw error("type estimate needs depth >= 10");
    cf.ensure_depth(depth);
    std::vector<double> lq(depth + 1, 0.0);
    for (std::size_t n = 1; n <= depth; ++n) lq[n] = log_big(cf.q(n));
    TypeEstimate est;
    std::size_t lo = depth - std::max<std::size_t>(3, depth / 3);
    for (std::size_t n = std::max<std::size_t>(lo, 2); n < depth; ++n) {
        double d1 = lq[n] - lq[n - 1];
        double d2 = lq[n + 1] - lq[n];
        if (d1 <= 0.0) continue;
        double g = d2 / d1;
        if (g > est.gamma_hat) {
            est.gamma_hat = g;
            est.at_index = n;
        }
    }
    return est;
}

namespace {

// floor(base^expnt); exact for integral exponents
BigInt big_pow(const BigInt& base, double expnt) {
    if (std::floor(expnt) == expnt && expnt >= 0.0 && expnt <= 64.0) {
        BigInt r = 1;
        for (unsigned i = 0; i < static_cast<unsigned>(expnt); ++i) r *= base;
        return r;
    }
    return big_floor_exp(expnt * log_big(base));
}

} // namespace

ContinuedFraction construct_type(double gamma, std::size_t depth) {
    if (gamma < 1.0) throw error("Diophantine type is >= 1");
    std::vector<BigInt> a;
    BigInt q_prev = 0, q_cur = 1;   // q_0 = 1
    for (std::size_t n = 1; n <= depth; ++n) {
        BigInt an = big_pow(q_cur, gamma - 1.0);
        if (an < 1) an = 1;
        a.push_back(an);
        BigInt q_next = an * q_cur + q_prev;
        q_prev = q_cur;
        q_cur = q_next;
        if (boost::multiprecision::msb(q_cur) > 2'000'000) break;   // runaway guard
    }
    return ContinuedFraction(std::move(a));
}

YxiPair construct_Y_xi_pair(double xi, std::size_t depth) {
    if (xi <= 1.0) throw error("Y_xi needs xi > 1");
    std::vector<BigInt> a{2}, ap;    // q_1 = 2 so the chains start apart
    std::vector<BigInt> q{1, 2};     // q_0, q_1 of theta
    std::vector<BigInt> qp{1};       // q'_0 of theta'
    for (std::size_t n = 1; n <= depth; ++n) {
        // smallest a'_n with q'_n = a'_n q'_{n-1} + q'_{n-2} >= q_n^xi
        BigInt target = big_pow(q[n], xi) + 1;
        BigInt prev2 = n >= 2 ? qp[n - 2] : BigInt(0);
        BigInt need = target - prev2;
        if (need < 1) need = 1;
        BigInt apn = (need + qp[n - 1] - 1) / qp[n - 1];
        if (apn < 1) apn = 1;
        ap.push_back(apn);
        qp.push_back(apn * qp[n - 1] + prev2);
        // smallest a_{n+1} with q_{n+1} >= (q'_n)^xi
        BigInt target2 = big_pow(qp[n], xi) + 1;
        BigInt need2 = target2 - q[n - 1];
        if (need2 < 1) need2 = 1;
        BigInt an1 = (need2 + q[n] - 1) / q[n];
        if (an1 < 1) an1 = 1;
        a.push_back(an1);
        q.push_back(an1 * q[n] + q[n - 1]);
        if (boost::multiprecision::msb(q.back()) > 500'000) break;
    }
    YxiPair pair{ContinuedFraction(std::move(a)), ContinuedFraction(std::move(ap)), false};
    std::size_t d = pair.theta_prime.quotients().size();
    pair.theta.ensure_depth(d + 1);
    pair.theta_prime.ensure_depth(d);
    bool ok = true;
    for (std::size_t n = 1; n <= d; ++n) {
        if (big_pow(pair.theta.q(n), xi) > pair.theta_prime.q(n)) ok = false;
        if (big_pow(pair.theta_prime.q(n), xi) > pair.theta.q(n + 1)) ok = false;
    }
    pair.certificate = ok;
    return pair;
}

double rotation_distance(ContinuedFraction& cf, std::uint64_t qmult) {
    if (qmult < 1) throw error("rotation distance needs q >= 1");
    std::size_t n = 1;
    cf.ensure_depth(n);
    const BigInt threshold = BigInt(1) << 96;
    while (cf.q(n) <= threshold) cf.ensure_depth(++n);
    const BigInt& P = cf.p(n);
    const BigInt& Q = cf.q(n);
    BigInt r = (BigInt(qmult) * P) % Q;
    BigInt other = Q - r;
    const BigInt& m = r < other ? r : other;
    if (m == 0) return 0.0;
    return std::exp(log_big(m) - log_big(Q));
}

AngleSpec AngleSpec::from_cf(ContinuedFraction& cf) {
    AngleSpec a;
    a.quotients = cf.quotients();
    a.value = cf.fixed128();
    a.approx = a.value.to_double();
    return a;
}

AngleSpec AngleSpec::from_quotients(std::vector<std::uint64_t> qs) {
    auto cf = ContinuedFraction::from_u64(qs);
    return from_cf(cf);
}

AngleSpec AngleSpec::golden() { return from_quotients({1}); }

AngleSpec AngleSpec::of_type(double gamma, std::size_t depth) {
    auto cf = construct_type(gamma, depth);
    return from_cf(cf);
}

} // namespace ergolab
