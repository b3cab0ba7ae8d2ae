#include "ergolab/experiments.hpp"

#include <chrono>
#include <filesystem>
#include <sstream>

#include "ergolab/ensemble.hpp"

namespace ergolab {

void ExperimentConfig::apply(const Config& c) {
    if (c.has("experiment")) name = c.get_string("experiment");
    n_max = c.get_integer("n_max", n_max);
    ensemble = c.get_integer("ensemble", ensemble);
    ratio = c.get_number("ratio", ratio);
    seed = c.get_integer("seed", seed);
    threads = static_cast<int>(c.get_integer("threads", static_cast<std::uint64_t>(threads)));
    tail_fraction = c.get_number("tail_fraction", tail_fraction);
    outdir = c.get_string("out", outdir);
    for (const auto& [k, v] : c.entries()) {
        if (k == "experiment" || k == "n_max" || k == "ensemble" || k == "ratio" ||
            k == "seed" || k == "threads" || k == "tail_fraction" || k == "out")
            continue;
        extra.set(k, v);
    }
}

Config ExperimentConfig::render() const {
    Config c = extra;
    c.set("experiment", name);
    c.set("n_max", std::to_string(n_max));
    c.set("ensemble", std::to_string(ensemble));
    c.set("ratio", format_double(ratio));
    c.set("seed", std::to_string(seed));
    c.set("threads", std::to_string(threads));
    c.set("tail_fraction", format_double(tail_fraction));
    if (!outdir.empty()) c.set("out", outdir);
    return c;
}

const RegistryEntry* find_experiment(const std::string& name) {
    for (const auto& e : experiment_registry())
        if (e.name == name) return &e;
    return nullptr;
}

namespace {

void append_report_json(std::ostringstream& out, const ScalingReport& r) {
    out << "{\"name\":\"" << json_escape(r.name) << "\""
        << ",\"law\":\"" << json_escape(r.law) << "\""
        << ",\"predicted\":" << format_double(r.predicted)
        << ",\"tolerance\":[" << format_double(r.tol_lo) << ','
        << format_double(r.tol_hi) << ']'
        << ",\"fitted\":" << format_double(r.fitted)
        << ",\"fitted_stderr\":" << format_double(r.fitted_stderr)
        << ",\"tail\":[" << format_double(r.tail_lo) << ',' << format_double(r.tail_hi) << ']'
        << ",\"median\":" << format_double(r.ensemble.median)
        << ",\"iqr\":" << format_double(r.ensemble.iqr)
        << ",\"pass_fraction\":" << format_double(r.ensemble.pass_fraction)
        << ",\"n_orbits\":" << r.ensemble.values.size()
        << ",\"pass\":" << (r.pass ? "true" : "false")
        << ",\"note\":\"" << json_escape(r.note) << "\""
        << ",\"per_orbit\":[";
    for (std::size_t i = 0; i < r.ensemble.values.size(); ++i) {
        if (i) out << ',';
        out << format_double(r.ensemble.values[i]);
    }
    out << "]}";
}

} // namespace

std::string report_json(const ExperimentResult& r) {
    std::ostringstream out;
    out << "{\"name\":\"" << json_escape(r.name) << "\""
        << ",\"pass\":" << (r.pass ? "true" : "false")
        << ",\"detail\":\"" << json_escape(r.detail) << "\""
        << ",\"reports\":[";
    for (std::size_t i = 0; i < r.reports.size(); ++i) {
        if (i) out << ',';
        append_report_json(out, r.reports[i]);
    }
    out << "]}";
    return out.str();
}

std::string RunManifest::to_json() const {
    std::ostringstream out;
    out << "{\"version\":\"" << version << "\""
        << ",\"wall_time_s\":" << format_double(wall_time_s)
        << ",\"config\":{";
    bool first = true;
    for (const auto& [k, v] : config_echo.entries()) {
        if (!first) out << ',';
        first = false;
        out << '"' << json_escape(k) << "\":\"" << json_escape(v) << '"';
    }
    out << "},\"results\":[";
    for (std::size_t i = 0; i < results.size(); ++i) {
        if (i) out << ',';
        out << "{\"name\":\"" << json_escape(results[i].first) << "\",\"pass\":"
            << (results[i].second ? "true" : "false") << '}';
    }
    out << "],\"files\":[";
    for (std::size_t i = 0; i < files.size(); ++i) {
        if (i) out << ',';
        out << "{\"path\":\"" << json_escape(files[i].first) << "\",\"fnv1a64\":\""
            << std::hex << files[i].second << std::dec << "\"}";
    }
    out << "]}";
    return out.str();
}

RunManifest run_experiment(const ExperimentConfig& cfg) {
    const RegistryEntry* entry = find_experiment(cfg.name);
    if (!entry) throw error("unknown experiment: " + cfg.name);
    std::string outdir = cfg.outdir.empty() ? ("ergolab_out_" + cfg.name) : cfg.outdir;
    std::filesystem::create_directories(outdir);

    auto t0 = std::chrono::steady_clock::now();
    ExperimentResult result = entry->run(cfg);
    auto t1 = std::chrono::steady_clock::now();

    RunManifest man;
    man.version = kVersion;
    man.wall_time_s = std::chrono::duration<double>(t1 - t0).count();
    man.config_echo = cfg.render();
    man.results.emplace_back(result.name, result.pass);

    std::string trace_path = outdir + "/" + cfg.name + "_traces.csv";
    std::string report_path = outdir + "/" + cfg.name + "_report.json";
    std::string echo_path = outdir + "/config_echo.cfg";
    write_trace_csv(trace_path, result.trace_rows);
    write_text_file(report_path, report_json(result));
    write_text_file(echo_path, man.config_echo.render());
    man.files.emplace_back(trace_path, fnv1a64_file(trace_path));
    man.files.emplace_back(report_path, fnv1a64_file(report_path));
    write_text_file(outdir + "/manifest.json", man.to_json());
    return man;
}

} // namespace ergolab
