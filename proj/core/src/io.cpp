#include "ergolab/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace ergolab {

namespace {

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

} // namespace

Config Config::parse_string(const std::string& text) {
    Config c;
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw error("config line " + std::to_string(lineno) + ": expected key = value");
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (key.empty()) throw error("config line " + std::to_string(lineno) + ": empty key");
        c.kv_[key] = value;
    }
    return c;
}

Config Config::parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw error("cannot open config file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_string(ss.str());
}

bool Config::has(const std::string& key) const { return kv_.count(key) > 0; }

std::string Config::get_string(const std::string& key) const {
    auto it = kv_.find(key);
    if (it == kv_.end()) throw error("missing config key: " + key);
    return it->second;
}

std::string Config::get_string(const std::string& key, const std::string& dflt) const {
    auto it = kv_.find(key);
    return it == kv_.end() ? dflt : it->second;
}

double Config::get_number(const std::string& key) const {
    const std::string v = get_string(key);
    std::size_t pos = 0;
    double d = 0.0;
    try {
        d = std::stod(v, &pos);
    } catch (const std::exception&) {
        throw error("config key " + key + " is not a number: " + v);
    }
    if (pos != v.size()) throw error("config key " + key + " is not a number: " + v);
    return d;
}

double Config::get_number(const std::string& key, double dflt) const {
    return has(key) ? get_number(key) : dflt;
}

std::uint64_t Config::get_integer(const std::string& key, std::uint64_t dflt) const {
    if (!has(key)) return dflt;
    double d = get_number(key);
    if (d < 0) throw error("config key " + key + " must be nonnegative");
    return static_cast<std::uint64_t>(d);
}

std::vector<double> Config::get_list(const std::string& key) const {
    std::vector<double> out;
    for (const auto& tok : get_string_list(key)) out.push_back(std::stod(tok));
    return out;
}

std::vector<std::string> Config::get_string_list(const std::string& key) const {
    std::vector<std::string> out;
    std::string v = get_string(key);
    std::size_t start = 0;
    while (start <= v.size()) {
        auto comma = v.find(',', start);
        std::string tok = comma == std::string::npos ? v.substr(start)
                                                     : v.substr(start, comma - start);
        tok = trim(tok);
        if (!tok.empty()) out.push_back(tok);
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return out;
}

void Config::set(const std::string& key, const std::string& value) { kv_[key] = value; }

std::string Config::render() const {
    std::ostringstream out;
    for (const auto& [k, v] : kv_) out << k << " = " << v << "\n";
    return out.str();
}

std::uint64_t fnv1a64(const std::string& bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::uint64_t fnv1a64_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw error("cannot open file for digest: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return fnv1a64(ss.str());
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw error("cannot write file: " + path);
    out << content;
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_trace_csv(const std::string& path, const std::vector<TraceRow>& rows) {
    std::ostringstream out;
    out << "checkpoint,value,orbit_id\n";
    for (const auto& r : rows)
        out << r.checkpoint << ',' << format_double(r.value) << ',' << r.orbit_id << '\n';
    write_text_file(path, out.str());
}

std::string json_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size() + 8);
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            default: out += c;
        }
    }
    return out;
}

} // namespace ergolab
