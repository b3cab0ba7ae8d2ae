#include <doctest.h>

#include <cmath>

#include "ergolab/estimators.hpp"
#include "ergolab/rng.hpp"
#include "ergolab/tower.hpp"

using namespace ergolab;

TEST_CASE("tower: branch lengths normalize and follow the prescribed tail") {
    TowerSpec spec(0.5, 100'000);
    double sum = 0.0;
    for (std::size_t i = 1; i <= spec.i_max(); ++i) sum += spec.branch_length(i);
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));

    // analytic log-log slope of l_i over i in [10, 1e4] equals -beta-1
    std::vector<double> xs, ys;
    for (double i = 10.0; i <= 1e4; i *= 1.07) {
        xs.push_back(std::log(i));
        ys.push_back(std::log(spec.branch_length(static_cast<std::size_t>(i))));
    }
    CHECK(ols(xs, ys).slope == doctest::Approx(-1.5).epsilon(0.015));
    CHECK(spec.folded_tail_mass() > 0.0);
    CHECK(spec.folded_tail_mass() < 0.01);
}

TEST_CASE("tower: stepping climbs then returns") {
    TowerSpec spec(0.5, 10'000);
    // a point on branch 3 climbs levels 0,1,2 then returns to level 0
    double x = spec.branch_start(3) + 0.5 * spec.branch_length(3);
    TowerPoint p = tower_point(spec, x, 0);
    REQUIRE(p.branch == 3);
    p = tower_step(spec, p);
    CHECK(p.level == 1);
    p = tower_step(spec, p);
    CHECK(p.level == 2);
    p = tower_step(spec, p);
    CHECK(p.level == 0);
    CHECK(p.base == doctest::Approx(0.5).epsilon(1e-9));   // affine mid -> mid
    CHECK_THROWS_AS(tower_point(spec, x, 3), error);

    // successive returns to level 0 occur at gaps equal to R of the branch
    auto rng = make_rng(5150);
    TowerPoint q = tower_point(spec, unit_uniform_generic(rng), 0);
    std::uint64_t clock = 0;
    for (int returns = 0; returns < 2000; ++returns) {
        std::uint64_t expected_R = q.branch;
        std::uint64_t steps = 0;
        do {
            q = tower_step(spec, q);
            ++steps;
            ++clock;
        } while (q.level != 0);
        REQUIRE(steps == expected_R);
    }
}

TEST_CASE("tower: level-zero return frequencies match the branch lengths") {
    TowerSpec spec(0.5, 1'000'000);
    auto rng = make_rng(2718);
    const std::size_t N = 1'000'000;
    std::vector<std::uint64_t> freq(101, 0);
    TowerPoint p = tower_point(spec, unit_uniform_generic(rng), 0);
    std::size_t returns = 0;
    while (returns < N) {
        if (p.level == 0) {
            if (p.branch <= 100) ++freq[p.branch];
            ++returns;
        }
        p = tower_step(spec, p);
    }
    int violations = 0;
    for (std::size_t i = 1; i <= 100; ++i) {
        double pr = spec.branch_length(i);
        double se = std::sqrt(pr * (1.0 - pr) / static_cast<double>(N));
        if (std::fabs(static_cast<double>(freq[i]) / static_cast<double>(N) - pr) > 3.0 * se)
            ++violations;
    }
    // 100 three-sigma tests on one fixed seed: allow a single outlier
    CHECK(violations <= 1);
}

TEST_CASE("tower: whole-base target counts exactly the returns") {
    TowerSpec spec(0.5, 50'000);
    auto rng = make_rng(808);
    // zeta = 0 keeps nu(B_k) = 1: the target is the whole base forever, and
    // the count equals the number of visits to level 0
    TowerPoint p = tower_point(spec, unit_uniform_generic(rng), 0);
    std::uint64_t count = 0, returns = 0;
    const std::uint64_t n = 200'000;
    for (std::uint64_t k = 1; k <= n; ++k) {
        p = tower_step(spec, p);
        if (p.level == 0) {
            ++returns;
            if (std::fabs(p.base - 0.5) <= 0.5) ++count;
        }
    }
    CHECK(count == returns);

    // visit counting through tower_step equals base-map-plus-bookkeeping
    auto rng2 = make_rng(808);
    double base = unit_uniform_generic(rng2);
    std::uint64_t clock = 0, returns2 = 0;
    while (true) {
        std::uint64_t R = spec.branch_of(base);
        if (clock + R > n) break;
        clock += R;
        ++returns2;
        double len = spec.branch_length(spec.branch_of(base));
        base = (base - spec.branch_start(spec.branch_of(base))) / len;
        if (base >= 1.0) base = std::nextafter(1.0, 0.0);
        if (base < 0.0) base = 0.0;
    }
    CHECK(returns2 == returns);
}

TEST_CASE("tower: bc experiment trivial schedules") {
    TowerSpec spec(0.5, 100'000);
    // empty targets: zeta so large that radii vanish immediately past k = 1
    auto out = tower_bc_experiment(spec, 0.2, 8.0, 0.25, 2'000, 24, 99, 0, 0.0, 0.5);
    for (auto c : out.final_count) CHECK(c <= 2);   // only the k = 1 full-space ball

    CHECK_THROWS_AS(tower_bc_experiment(spec, std::nextafter(1.0, 0.0), 0.3, 0.25, 1'000,
                                        24, 99, 0, 0.9, 0.5, 3),
                    error);   // accumulation point: too many cells
}

TEST_CASE("tower: companion series is monotone in the exponent") {
    TowerSpec spec(0.5, 10'000);
    double lo = tower_companion_series(spec, 1'000'000, 0.3, 2.25);
    double hi = tower_companion_series(spec, 1'000'000, 0.3, 1.75);
    CHECK(lo < hi);
    CHECK(lo > 0.0);
}
