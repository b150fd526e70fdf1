#pragma once

#include <map>
#include <stdexcept>
#include <optional>
#include <set>
#include <string>

namespace fracbvp {

// Flat `key = value` lines, '#' starts a comment, duplicate keys rejected.
struct RunConfig {
    std::map<std::string, std::string> entries;

    static RunConfig parse_string(const std::string& text);
    static RunConfig parse_file(const std::string& path);

    bool has(const std::string& key) const;
    std::string get(const std::string& key) const;  // throws if missing
    double get_double(const std::string& key) const;
    double get_double(const std::string& key, double fallback) const;
    int get_int(const std::string& key, int fallback) const;
    bool get_bool(const std::string& key, bool fallback) const;

    // throws when a key is not in the allowed set
    void reject_unknown(const std::set<std::string>& allowed) const;
};

struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& message) : std::runtime_error(message) {}
};

// "start:stop:count"
struct ParsedRange {
    double start = 0.0;
    double stop = 0.0;
    int count = 1;
};
ParsedRange parse_range(const std::string& text);

}  // namespace fracbvp
