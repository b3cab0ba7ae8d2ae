#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ergolab/estimators.hpp"
#include "ergolab/io.hpp"

namespace ergolab {

struct ExperimentConfig {
    std::string name;
    std::uint64_t n_max = 10'000'000;
    std::uint64_t ensemble = 100;
    double ratio = 1.2;
    std::uint64_t seed = 20240612;
    int threads = 0;              // 0: default_threads()
    double tail_fraction = 0.25;
    std::string outdir;
    Config extra;                 // experiment-specific parameters

    void apply(const Config& c);
    Config render() const;
};

struct ExperimentResult {
    std::string name;
    bool pass = false;
    std::vector<ScalingReport> reports;
    std::vector<TraceRow> trace_rows;   // plot-ready sample of traces
    std::string detail;                 // free-form one-line summary
};

struct RegistryEntry {
    std::string name;
    std::string law;   // the tested limit law, stated as a formula
    ExperimentConfig defaults;
    std::function<ExperimentResult(const ExperimentConfig&)> run;
};

const std::vector<RegistryEntry>& experiment_registry();
const RegistryEntry* find_experiment(const std::string& name);

struct RunManifest {
    Config config_echo;
    std::string version;
    double wall_time_s = 0.0;
    std::vector<std::pair<std::string, bool>> results;
    std::vector<std::pair<std::string, std::uint64_t>> files;   // path -> fnv64

    std::string to_json() const;
};

// Executes an experiment ensemble, writes traces (CSV), reports (JSON) and
// the manifest; returns the manifest. Exit status of the CLI is 0 iff all
// acceptance tolerances pass.
RunManifest run_experiment(const ExperimentConfig& cfg);

std::string report_json(const ExperimentResult& r);

inline constexpr const char* kVersion = "0.1.0";

} // namespace ergolab
