// ergolab: run, list, and replay the experiment registry.

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <iostream>

#include "ergolab/ensemble.hpp"
#include "ergolab/experiments.hpp"

using namespace ergolab;

namespace {

int cmd_list() {
    for (const auto& e : experiment_registry()) {
        std::printf("%-22s n_max=%-11llu ensemble=%-6llu %s\n", e.name.c_str(),
                    static_cast<unsigned long long>(e.defaults.n_max),
                    static_cast<unsigned long long>(e.defaults.ensemble),
                    e.law.c_str());
    }
    return 0;
}

ExperimentConfig build_config(const std::string& experiment, const std::string& config_path,
                              const std::string& out, long long seed, int threads,
                              long long n_max, long long ensemble) {
    Config file_cfg;
    if (!config_path.empty()) file_cfg = Config::parse_file(config_path);
    std::string name = experiment;
    if (name.empty() && file_cfg.has("experiment")) name = file_cfg.get_string("experiment");
    if (name.empty()) throw error("no experiment named: pass --experiment or a config file");
    const RegistryEntry* entry = find_experiment(name);
    if (!entry) throw error("unknown experiment: " + name);
    ExperimentConfig cfg = entry->defaults;
    cfg.apply(file_cfg);
    cfg.name = name;
    if (!out.empty()) cfg.outdir = out;
    if (seed >= 0) cfg.seed = static_cast<std::uint64_t>(seed);
    if (threads > 0) cfg.threads = threads;
    if (n_max >= 0) cfg.n_max = static_cast<std::uint64_t>(n_max);
    if (ensemble > 0) cfg.ensemble = static_cast<std::uint64_t>(ensemble);
    return cfg;
}

int cmd_run(const ExperimentConfig& cfg) {
    RunManifest man = run_experiment(cfg);
    bool pass = true;
    for (const auto& [name, ok] : man.results) {
        std::printf("%s %s\n", ok ? "PASS" : "FAIL", name.c_str());
        pass = pass && ok;
    }
    std::printf("wall time %.1fs, outputs in %s\n", man.wall_time_s,
                cfg.outdir.empty() ? ("ergolab_out_" + cfg.name).c_str()
                                   : cfg.outdir.c_str());
    return pass ? 0 : 1;
}

int cmd_replay(const std::string& run_dir, std::string out) {
    std::string echo = run_dir + "/config_echo.cfg";
    Config cfg_file = Config::parse_file(echo);
    std::string name = cfg_file.get_string("experiment");
    const RegistryEntry* entry = find_experiment(name);
    if (!entry) throw error("unknown experiment in manifest: " + name);
    ExperimentConfig cfg = entry->defaults;
    cfg.apply(cfg_file);
    if (out.empty()) out = run_dir + "/replay";
    cfg.outdir = out;
    run_experiment(cfg);
    bool identical = true;
    for (const char* suffix : {"_traces.csv", "_report.json"}) {
        std::string a = run_dir + "/" + name + suffix;
        std::string b = out + "/" + name + suffix;
        auto ha = fnv1a64_file(a), hb = fnv1a64_file(b);
        std::printf("%s: %s\n", (name + suffix).c_str(),
                    ha == hb ? "byte-identical" : "MISMATCH");
        identical = identical && ha == hb;
    }
    return identical ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"simulation lab for anomalous scaling laws of infinite-measure dynamics"};
    app.require_subcommand(1);

    auto* list = app.add_subcommand("list", "print the experiment catalog");

    std::string experiment, config_path, out;
    long long seed = -1, n_max = -1, ensemble = -1;
    int threads = 0;
    auto* run = app.add_subcommand("run", "run one experiment and write reports");
    run->add_option("-e,--experiment", experiment, "registry experiment name");
    run->add_option("-c,--config", config_path, "key = value config file");
    run->add_option("-o,--out", out, "output directory");
    run->add_option("--seed", seed, "master seed");
    run->add_option("--threads", threads, "worker threads (default: ERGOLAB_THREADS or hardware)");
    run->add_option("--n-max", n_max, "clock-time budget override");
    run->add_option("--ensemble", ensemble, "ensemble size override");

    std::string run_dir, replay_out;
    auto* replay = app.add_subcommand("replay", "re-run a finished run and check byte-identity");
    replay->add_option("run_dir", run_dir, "directory of a previous run")->required();
    replay->add_option("-o,--out", replay_out, "where to put the replay");

    CLI11_PARSE(app, argc, argv);

    try {
        if (list->parsed()) return cmd_list();
        if (run->parsed())
            return cmd_run(build_config(experiment, config_path, out, seed, threads,
                                        n_max, ensemble));
        if (replay->parsed()) return cmd_replay(run_dir, replay_out);
    } catch (const std::exception& ex) {
        std::fprintf(stderr, "error: %s\n", ex.what());
        return 2;
    }
    return 0;
}
