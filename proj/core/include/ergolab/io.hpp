#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "ergolab/schedule.hpp"

namespace ergolab {

// Flat key-value experiment config:
//   lines are `key = value`, `#` starts a comment, values are strings,
//   numbers, or comma-separated lists. Unknown keys are an error at use time.
class Config {
  public:
    static Config parse_file(const std::string& path);
    static Config parse_string(const std::string& text);

    bool has(const std::string& key) const;
    std::string get_string(const std::string& key) const;
    std::string get_string(const std::string& key, const std::string& dflt) const;
    double get_number(const std::string& key) const;
    double get_number(const std::string& key, double dflt) const;
    std::uint64_t get_integer(const std::string& key, std::uint64_t dflt) const;
    std::vector<double> get_list(const std::string& key) const;
    std::vector<std::string> get_string_list(const std::string& key) const;
    void set(const std::string& key, const std::string& value);

    const std::map<std::string, std::string>& entries() const { return kv_; }
    std::string render() const;

  private:
    std::map<std::string, std::string> kv_;
};

std::uint64_t fnv1a64_file(const std::string& path);
std::uint64_t fnv1a64(const std::string& bytes);

void write_text_file(const std::string& path, const std::string& content);

// CSV trace files carry the header  checkpoint,value,orbit_id
struct TraceRow {
    std::uint64_t checkpoint;
    double value;
    std::uint64_t orbit_id;
};
void write_trace_csv(const std::string& path, const std::vector<TraceRow>& rows);

std::string json_escape(const std::string& s);
std::string format_double(double v);

} // namespace ergolab
