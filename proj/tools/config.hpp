#pragma once

// Flat key = value experiment configuration: one assignment per line,
// '#' comments, a closed documented key set, typed access with defaults.
// Every value read (default or not) is recorded for the summary echo.

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace specop::cli {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Config {
    std::string path;
    std::map<std::string, std::string> kv;
    // every key the run consulted, with the value actually used
    mutable std::map<std::string, std::string> resolved;

    bool has(const std::string& key) const { return kv.count(key) != 0; }

    std::string get(const std::string& key, const std::string& fallback) const;
    double get_double(const std::string& key, double fallback) const;
    int get_int(const std::string& key, int fallback) const;
    unsigned long long get_u64(const std::string& key, unsigned long long fallback) const;
    bool get_bool(const std::string& key, bool fallback) const;
    std::vector<double> get_list(const std::string& key, const std::string& fallback) const;
    std::vector<int> get_int_list(const std::string& key, const std::string& fallback) const;
};

// Parses `path` and rejects unknown keys.  If the file carries an
// `experiment` key it must match the subcommand that is about to run.
Config load_config(const std::string& path, const std::string& experiment);

}  // namespace specop::cli
