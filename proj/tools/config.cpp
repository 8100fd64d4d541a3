#include "config.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

namespace specop::cli {

namespace {

const std::set<std::string>& known_keys() {
    static const std::set<std::string> keys{
        // run identity
        "experiment", "name", "seed", "out",
        // grid
        "n", "N", "R", "self_dual", "normalization",
        // space
        "family", "s", "p", "q",
        // symbol
        "symbol", "rho", "sigma", "t", "alpha", "a", "order", "delta",
        // wavelets
        "u", "depth", "Jmax",
        // spectrum fitting and rate statements
        "fit_lo", "fit_hi", "fit_model", "source", "s1", "s2",
        // probe studies
        "ladder", "probes", "suite",
        // experiment-specific bounds
        "row_sum_bound", "max_alpha", "max_gamma",
    };
    return keys;
}

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

}  // namespace

std::string Config::get(const std::string& key, const std::string& fallback) const {
    auto it = kv.find(key);
    const std::string v = it == kv.end() ? fallback : it->second;
    resolved[key] = v;
    return v;
}

double Config::get_double(const std::string& key, double fallback) const {
    const std::string v = get(key, std::to_string(fallback));
    try {
        std::size_t pos = 0;
        const double d = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return d;
    } catch (const std::exception&) {
        throw ConfigError("key '" + key + "' in " + path + " is not a number: '" + v + "'");
    }
}

int Config::get_int(const std::string& key, int fallback) const {
    const double d = get_double(key, double(fallback));
    const int i = static_cast<int>(d);
    if (double(i) != d)
        throw ConfigError("key '" + key + "' in " + path + " must be an integer");
    return i;
}

unsigned long long Config::get_u64(const std::string& key,
                                   unsigned long long fallback) const {
    const std::string v = get(key, std::to_string(fallback));
    try {
        std::size_t pos = 0;
        const unsigned long long u = std::stoull(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return u;
    } catch (const std::exception&) {
        throw ConfigError("key '" + key + "' in " + path +
                          " is not an unsigned integer: '" + v + "'");
    }
}

bool Config::get_bool(const std::string& key, bool fallback) const {
    const std::string v = get(key, fallback ? "true" : "false");
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    throw ConfigError("key '" + key + "' in " + path + " is not a boolean: '" + v + "'");
}

std::vector<double> Config::get_list(const std::string& key,
                                     const std::string& fallback) const {
    const std::string v = get(key, fallback);
    std::vector<double> out;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (item.empty()) continue;
        try {
            std::size_t pos = 0;
            out.push_back(std::stod(item, &pos));
            if (pos != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw ConfigError("key '" + key + "' in " + path +
                              " has a non-numeric entry: '" + item + "'");
        }
    }
    if (out.empty())
        throw ConfigError("key '" + key + "' in " + path + " is an empty list");
    return out;
}

std::vector<int> Config::get_int_list(const std::string& key,
                                      const std::string& fallback) const {
    std::vector<int> out;
    for (double d : get_list(key, fallback)) {
        const int i = static_cast<int>(d);
        if (double(i) != d)
            throw ConfigError("key '" + key + "' in " + path +
                              " must hold integers");
        out.push_back(i);
    }
    return out;
}

Config load_config(const std::string& path, const std::string& experiment) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);

    Config cfg;
    cfg.path = path;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string stripped = trim(line.substr(0, line.find('#')));
        if (stripped.empty()) continue;
        const std::size_t eq = stripped.find('=');
        if (eq == std::string::npos)
            throw ConfigError(path + ":" + std::to_string(lineno) +
                              ": expected 'key = value', got '" + stripped + "'");
        const std::string key = trim(stripped.substr(0, eq));
        const std::string value = trim(stripped.substr(eq + 1));
        if (key.empty() || value.empty())
            throw ConfigError(path + ":" + std::to_string(lineno) +
                              ": empty key or value");
        if (!known_keys().count(key))
            throw ConfigError(path + ":" + std::to_string(lineno) +
                              ": unknown key '" + key + "'");
        if (cfg.kv.count(key))
            throw ConfigError(path + ":" + std::to_string(lineno) +
                              ": duplicate key '" + key + "'");
        cfg.kv[key] = value;
    }

    if (cfg.has("experiment")) {
        const std::string declared = cfg.kv.at("experiment");
        if (declared != experiment)
            throw ConfigError(path + ": config declares experiment '" + declared +
                              "' but '" + experiment + "' was requested");
    }
    cfg.resolved["experiment"] = experiment;
    return cfg;
}

}  // namespace specop::cli
