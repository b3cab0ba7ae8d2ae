#include <benchmark/benchmark.h>

#include "ergolab/induced.hpp"
#include "ergolab/orbit.hpp"
#include "ergolab/rng.hpp"

using namespace ergolab;

static void BM_LsvStep(benchmark::State& state) {
    double alpha = static_cast<double>(state.range(0));
    MapSpec map = MapSpec::lsv(alpha);
    double x = 0.637;
    for (auto _ : state) {
        x = lsv_apply(map.alpha, map.two_pow_alpha, x);
        benchmark::DoNotOptimize(x);
    }
}
BENCHMARK(BM_LsvStep)->Arg(1)->Arg(2);

static void BM_TapeOrbitStep(benchmark::State& state) {
    MapSpec map = state.range(0) == 0 ? MapSpec::doubling() : MapSpec::tent();
    Orbit orbit(map, Point::on_interval(0.37123));
    for (auto _ : state) {
        orbit.advance();
        benchmark::DoNotOptimize(orbit.state().base);
    }
}
BENCHMARK(BM_TapeOrbitStep)->Arg(0)->Arg(1);

static void BM_RotationStep(benchmark::State& state) {
    AngleSpec th = AngleSpec::of_type(4.0, 8);
    Frac128 t{12345};
    for (auto _ : state) {
        t = t + th.value;
        benchmark::DoNotOptimize(circle_dist(t, Frac128{0}));
    }
}
BENCHMARK(BM_RotationStep);

static void BM_InducedExtend(benchmark::State& state) {
    for (auto _ : state) {
        InducedSystem sys(2.0);
        sys.extend(static_cast<std::size_t>(state.range(0)));
        benchmark::DoNotOptimize(sys.x(static_cast<std::size_t>(state.range(0))));
    }
}
BENCHMARK(BM_InducedExtend)->Arg(1000)->Arg(100000);

static void BM_SampleReturn(benchmark::State& state) {
    InducedSystem sys(2.0);
    sys.extend(1u << 18);
    sys.table_budget = 1u << 18;
    auto rng = make_rng(7);
    for (auto _ : state) benchmark::DoNotOptimize(sys.sample_return(rng));
}
BENCHMARK(BM_SampleReturn);

static void BM_MonitoredOrbit(benchmark::State& state) {
    MapSpec map = MapSpec::lsv(2.0);
    auto obs = ObservableSpec::dist_power(Coord::Base, 0.8, 1.0);
    for (auto _ : state) {
        auto bm = std::make_shared<BirkhoffMaxMonitor>(obs);
        auto rl = std::make_shared<RunLengthMonitor>();
        std::vector<std::shared_ptr<Monitor>> ms{bm, rl};
        iterate_with_checkpoints(map, Point::on_interval(0.613),
                                 CheckpointSchedule::geometric(
                                     static_cast<std::uint64_t>(state.range(0)), 1.3),
                                 ms);
        benchmark::DoNotOptimize(bm->sum_before_current());
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_MonitoredOrbit)->Arg(100000);

BENCHMARK_MAIN();
