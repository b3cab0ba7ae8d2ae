#include <doctest.h>

#include <cmath>

#include "ergolab/diophantine.hpp"
#include "ergolab/ensemble.hpp"
#include "ergolab/estimators.hpp"
#include "ergolab/maps.hpp"
#include "ergolab/orbit.hpp"
#include "ergolab/rng.hpp"

using namespace ergolab;

TEST_CASE("diophantine: golden and sqrt2 convergents") {
    auto golden = ContinuedFraction::from_u64({1});
    auto cg = convergents(golden, 7);
    // Fibonacci denominators 1, 2, 3, 5, 8, 13, 21
    std::vector<std::uint64_t> fib = {1, 2, 3, 5, 8, 13, 21};
    for (std::size_t i = 0; i < 7; ++i) CHECK(cg[i].second == fib[i]);

    auto sqrt2m1 = ContinuedFraction::from_u64({2});
    auto cs = convergents(sqrt2m1, 4);
    std::vector<std::uint64_t> qs = {2, 5, 12, 29};
    for (std::size_t i = 0; i < 4; ++i) CHECK(cs[i].second == qs[i]);

    // |theta - p_n/q_n| < 1/(q_n q_{n+1})
    double phi = (std::sqrt(5.0) - 1.0) / 2.0;
    golden.ensure_depth(20);
    for (std::size_t n = 1; n < 20; ++n) {
        double p = golden.p(n).convert_to<double>(), q = golden.q(n).convert_to<double>();
        double qq = golden.q(n + 1).convert_to<double>();
        CHECK(std::fabs(phi - p / q) < 1.0 / (q * qq));
    }
    CHECK(std::fabs(golden.approx() - phi) < 1e-18);
}

TEST_CASE("diophantine: determinant identity is verified on extension") {
    auto rng = make_rng(2024);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<std::uint64_t> a;
        for (int i = 0; i < 30; ++i) a.push_back(1 + (rng() % 9));
        auto cf = ContinuedFraction::from_u64(a);
        cf.ensure_depth(30);   // throws if p_n q_{n-1} - p_{n-1} q_n != (-1)^{n-1}
        for (std::size_t n = 1; n <= 30; ++n) {
            BigInt det = cf.p(n) * cf.q(n - 1) - cf.p(n - 1) * cf.q(n);
            REQUIRE((n % 2 == 1 ? det == 1 : det == -1));
        }
    }
}

TEST_CASE("diophantine: type estimates") {
    auto golden = ContinuedFraction::from_u64({1});
    CHECK(type_estimate(golden, 30).gamma_hat == doctest::Approx(1.0).epsilon(0.01));

    auto t4 = construct_type(4.0, 12);
    CHECK(type_estimate(t4, 10).gamma_hat == doctest::Approx(4.0).epsilon(0.05));

    auto t2 = construct_type(2.0, 16);
    CHECK(type_estimate(t2, 14).gamma_hat == doctest::Approx(2.0).epsilon(0.05));

    // gamma = 1 degenerates to all-ones quotients
    auto t1 = construct_type(1.0, 10);
    for (const auto& a : t1.quotients()) CHECK(a == 1);

    // any theta has type >= 1 (up to estimator tolerance)
    auto rng = make_rng(555);
    for (int trial = 0; trial < 25; ++trial) {
        std::vector<std::uint64_t> a;
        for (int i = 0; i < 36; ++i) a.push_back(1 + (rng() % 9));
        auto cf = ContinuedFraction::from_u64(a);
        CHECK(type_estimate(cf, 34).gamma_hat >= 1.0 - 0.01);
    }
}

TEST_CASE("diophantine: type-2 denominators square up") {
    auto t2 = construct_type(2.0, 18);
    t2.ensure_depth(16);
    for (std::size_t n = 12; n < 16; ++n) {
        double r = log_big(t2.q(n + 1)) / log_big(t2.q(n));
        CHECK(r == doctest::Approx(2.0).epsilon(0.05));
    }
}

TEST_CASE("diophantine: Y_xi pair certificate") {
    auto pair = construct_Y_xi_pair(4.0, 6);
    CHECK(pair.certificate);
    // individual types are finite and at least xi: the interleave forces
    // q_{n+1} >= q_n^{xi^2}, read off the materialized denominators directly
    double best = 0.0;
    for (std::size_t n = 2; n < pair.theta.depth(); ++n) {
        if (pair.theta.q(n) < 4) continue;
        best = std::max(best, log_big(pair.theta.q(n + 1)) / log_big(pair.theta.q(n)));
    }
    CHECK(best >= 4.0);
}

TEST_CASE("diophantine: rotation distance against convergent bracket") {
    auto golden = ContinuedFraction::from_u64({1});
    golden.ensure_depth(25);
    for (std::size_t n = 3; n <= 20; ++n) {
        auto qn = golden.q(n).convert_to<std::uint64_t>();
        double d = rotation_distance(golden, qn);
        double qn1 = golden.q(n + 1).convert_to<double>();
        CHECK(d > 1.0 / (2.0 * qn1));
        CHECK(d < 1.0 / qn1 * 1.0000001);
    }
    CHECK_THROWS_AS(rotation_distance(golden, 0), error);
}

TEST_CASE("diophantine: Y_xi degenerates as xi approaches 1") {
    // near xi = 1 the greedy interleave needs almost no forcing: the pair's
    // quotients stay small, unlike the xi = 4 towers
    auto nearly = construct_Y_xi_pair(1.05, 6);
    CHECK(nearly.certificate);
    BigInt largest = 0;
    for (const auto& a : nearly.theta.quotients())
        if (a > largest) largest = a;
    CHECK(largest < 1000);
    auto strong = construct_Y_xi_pair(4.0, 4);
    BigInt largest4 = 0;
    for (const auto& a : strong.theta.quotients())
        if (a > largest4) largest4 = a;
    CHECK(largest4 > BigInt(1) << 40);
}

TEST_CASE("diophantine: convergent denominators are best approximations") {
    auto golden = ContinuedFraction::from_u64({1});
    golden.ensure_depth(22);
    // q = q_n minimizes ||q theta|| among q' <= q_n (brute force to 1e4)
    Frac128 th = golden.fixed128();
    auto norm = [&](std::uint64_t q) { return circle_dist(th.times(q), Frac128{0}); };
    std::size_t n = 1;
    while (golden.q(n + 1) <= 10000) ++n;
    double best = 1.0;
    std::uint64_t argbest = 0;
    auto qn = golden.q(n).convert_to<std::uint64_t>();
    for (std::uint64_t q = 1; q <= qn; ++q) {
        if (norm(q) < best) {
            best = norm(q);
            argbest = q;
        }
    }
    CHECK(argbest == qn);
}

TEST_CASE("diophantine: engine rotation fiber equals direct multiplication") {
    AngleSpec th = AngleSpec::of_type(3.0, 10);
    MapSpec rot = MapSpec::rotation(th);
    Point p0 = Point::on_circle(Frac128{0});
    Orbit orbit(rot, p0);
    for (std::uint64_t n = 1; n <= 4096; ++n) {
        orbit.advance();
        if ((n & (n - 1)) == 0)   // powers of two
            REQUIRE(orbit.state().fiber[0] == th.value.times(n));
    }
}

TEST_CASE("diophantine_long: hitting indicators of rotations separate by type") {
    // Type-gamma rotations: H_under stays pinned near 1 while H_bar grows
    // with the type. At radii down to 2^-30 the deepest uncensored ladder
    // rung for the type-3 angle is q_4 = 731 -> q_5 = 3.9e8, which caps the
    // observable H_bar near ln(u q_5/2)/ln(2 q_4/u) ~ 2.3; the check below
    // pins the separation rather than the asymptotic value itself.
    struct Case {
        double gamma;
        std::uint64_t n_max;
        double bar_lo, bar_hi;
    };
    const Case cases[2] = {{1.0, 1ULL << 28, 0.80, 1.35},
                           {3.0, 1ULL << 29, 1.80, 3.45}};
    for (const auto& cs : cases) {
        AngleSpec th = AngleSpec::of_type(cs.gamma, 8);
        const std::size_t n_radii = 26;   // 2^-5 .. 2^-30
        const int seeds = 50;
        std::vector<int> bar_ok(seeds, 0), under_ok(seeds, 0);
        parallel_orbits(seeds, 0, [&](std::size_t s) {
            auto rng = make_rng(derive_seed(808, s));
            u128 x0 = (static_cast<u128>(rng()) << 64) | rng();
            u128 y = (static_cast<u128>(rng()) << 64) | rng();
            Frac128 cur{x0};
            HittingRecord rec;
            rec.levels_are_radii = true;
            for (std::size_t i = 0; i < n_radii; ++i)
                rec.level.push_back(std::exp2(-5.0 - static_cast<double>(i)));
            rec.tau.assign(n_radii, 0);
            rec.censored.assign(n_radii, true);
            std::size_t next = 0;
            for (std::uint64_t k = 1; k <= cs.n_max && next < n_radii; ++k) {
                cur = cur + th.value;
                double d = circle_dist(cur, Frac128{y});
                while (next < n_radii && d <= rec.level[next]) {
                    rec.tau[next] = k;
                    rec.censored[next] = false;
                    ++next;
                }
            }
            auto h = hitting_indicators(rec, 10);
            bar_ok[s] = (h.H_bar >= cs.bar_lo && h.H_bar <= cs.bar_hi) ? 1 : 0;
            under_ok[s] = (h.H_under >= 0.8 && h.H_under <= 1.2) ? 1 : 0;
        });
        int nb = 0, nu = 0;
        for (int s = 0; s < seeds; ++s) { nb += bar_ok[s]; nu += under_ok[s]; }
        CHECK(nb >= static_cast<int>(0.8 * seeds));
        CHECK(nu >= static_cast<int>(0.8 * seeds));
    }
}
