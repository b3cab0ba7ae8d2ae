#include <doctest.h>

#include <cstdio>
#include <filesystem>

#include "ergolab/experiments.hpp"
#include "ergolab/io.hpp"

using namespace ergolab;

TEST_CASE("io: config grammar") {
    auto c = Config::parse_string(
        "# comment line\n"
        "experiment = loglaw\n"
        "n_max = 1000000   # trailing comment\n"
        "alphas = 1, 2\n"
        "label = tail window\n");
    CHECK(c.get_string("experiment") == "loglaw");
    CHECK(c.get_integer("n_max", 0) == 1'000'000);
    auto xs = c.get_list("alphas");
    REQUIRE(xs.size() == 2);
    CHECK(xs[0] == 1.0);
    CHECK(xs[1] == 2.0);
    CHECK(c.get_string("label") == "tail window");
    CHECK(c.get_number("missing", 7.5) == 7.5);
    CHECK_THROWS_AS(c.get_string("missing"), error);
    CHECK_THROWS_AS(Config::parse_string("not a kv line\n"), error);
    CHECK_THROWS_AS(c.get_number("label"), error);

    auto echo = Config::parse_string(c.render());
    CHECK(echo.get_string("experiment") == "loglaw");
}

TEST_CASE("io: digests and csv") {
    CHECK(fnv1a64("") == 0xcbf29ce484222325ULL);
    CHECK(fnv1a64("a") != fnv1a64("b"));

    std::filesystem::create_directories("io_test_tmp");
    write_trace_csv("io_test_tmp/t.csv", {{1, 0.5, 0}, {2, 0.25, 0}, {1, 0.75, 1}});
    auto h1 = fnv1a64_file("io_test_tmp/t.csv");
    write_trace_csv("io_test_tmp/t2.csv", {{1, 0.5, 0}, {2, 0.25, 0}, {1, 0.75, 1}});
    CHECK(h1 == fnv1a64_file("io_test_tmp/t2.csv"));
    std::filesystem::remove_all("io_test_tmp");
}

TEST_CASE("io: registry catalog") {
    const auto& reg = experiment_registry();
    CHECK(reg.size() == 15);
    std::vector<std::string> expected = {
        "spdc-sums", "gm-maxima", "loglaw", "tent-hit", "max-hit-duality",
        "bc-infinite", "maxima-int", "runlength", "erdos-renyi",
        "rotation-oscillation", "skew-oscillation", "yxi-slow", "gamma-bound",
        "tower-bc", "aaronson-diagnostic"};
    for (const auto& name : expected) {
        const auto* e = find_experiment(name);
        REQUIRE(e != nullptr);
        CHECK(!e->law.empty());
    }
    // the small-maxima entry cites the P_n bound it tests
    CHECK(find_experiment("gamma-bound")->law.find("P_n") != std::string::npos);
    CHECK(find_experiment("does-not-exist") == nullptr);
}

TEST_CASE("io: unknown experiment writes nothing") {
    ExperimentConfig cfg;
    cfg.name = "no-such-thing";
    cfg.outdir = "io_test_nowrite";
    CHECK_THROWS_AS(run_experiment(cfg), error);
    CHECK(!std::filesystem::exists("io_test_nowrite"));
}

TEST_CASE("io: run, files, and byte-identical replay") {
    ExperimentConfig cfg = find_experiment("max-hit-duality")->defaults;
    cfg.n_max = 4000;
    cfg.ensemble = 20;
    cfg.outdir = "io_test_run";
    auto man = run_experiment(cfg);
    CHECK(man.results.size() == 1);
    REQUIRE(man.files.size() == 2);
    for (const auto& [path, digest] : man.files)
        CHECK(fnv1a64_file(path) == digest);   // manifest digests match emitted files

    // replay with the same config reproduces byte-identical trace files
    ExperimentConfig cfg2 = cfg;
    cfg2.outdir = "io_test_run2";
    auto man2 = run_experiment(cfg2);
    REQUIRE(man2.files.size() == 2);
    for (std::size_t i = 0; i < 2; ++i)
        CHECK(man.files[i].second == man2.files[i].second);

    // thread count does not change the bytes
    ExperimentConfig cfg3 = cfg;
    cfg3.outdir = "io_test_run3";
    cfg3.threads = 7;
    auto man3 = run_experiment(cfg3);
    for (std::size_t i = 0; i < 2; ++i)
        CHECK(man.files[i].second == man3.files[i].second);

    auto manifest_text = man.to_json();
    CHECK(manifest_text.find("\"results\"") != std::string::npos);
    std::filesystem::remove_all("io_test_run");
    std::filesystem::remove_all("io_test_run2");
    std::filesystem::remove_all("io_test_run3");
}
