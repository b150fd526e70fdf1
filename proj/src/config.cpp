#include "fracbvp/config.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

namespace fracbvp {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

}  // namespace

RunConfig RunConfig::parse_string(const std::string& text) {
    RunConfig cfg;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const std::string stripped = trim(line);
        if (stripped.empty()) continue;
        const auto eq = stripped.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(lineno) +
                              ": expected key = value");
        const std::string key = trim(stripped.substr(0, eq));
        const std::string value = trim(stripped.substr(eq + 1));
        if (key.empty() || value.empty())
            throw ConfigError("config line " + std::to_string(lineno) +
                              ": empty key or value");
        if (cfg.entries.count(key))
            throw ConfigError("config line " + std::to_string(lineno) +
                              ": duplicate key '" + key + "'");
        cfg.entries[key] = value;
    }
    return cfg;
}

RunConfig RunConfig::parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_string(buf.str());
}

bool RunConfig::has(const std::string& key) const { return entries.count(key) != 0; }

std::string RunConfig::get(const std::string& key) const {
    const auto it = entries.find(key);
    if (it == entries.end()) throw ConfigError("missing config key '" + key + "'");
    return it->second;
}

double RunConfig::get_double(const std::string& key) const {
    const std::string v = get(key);
    char* end = nullptr;
    const double x = std::strtod(v.c_str(), &end);
    if (end == v.c_str() || *end != '\0')
        throw ConfigError("config key '" + key + "': not a number: " + v);
    return x;
}

double RunConfig::get_double(const std::string& key, double fallback) const {
    return has(key) ? get_double(key) : fallback;
}

int RunConfig::get_int(const std::string& key, int fallback) const {
    if (!has(key)) return fallback;
    const double x = get_double(key);
    const int i = static_cast<int>(x);
    if (x != i) throw ConfigError("config key '" + key + "': not an integer");
    return i;
}

bool RunConfig::get_bool(const std::string& key, bool fallback) const {
    if (!has(key)) return fallback;
    const std::string v = get(key);
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    throw ConfigError("config key '" + key + "': not a boolean: " + v);
}

void RunConfig::reject_unknown(const std::set<std::string>& allowed) const {
    for (const auto& [key, value] : entries)
        if (!allowed.count(key))
            throw ConfigError("unknown config key '" + key + "'");
}

ParsedRange parse_range(const std::string& text) {
    ParsedRange r;
    const auto c1 = text.find(':');
    const auto c2 = text.find(':', c1 == std::string::npos ? c1 : c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos)
        throw ConfigError("range must be start:stop:count, got " + text);
    const auto to_double = [&](const std::string& s) {
        char* end = nullptr;
        const double x = std::strtod(s.c_str(), &end);
        if (end == s.c_str() || *end != '\0')
            throw ConfigError("bad range component: " + s);
        return x;
    };
    r.start = to_double(text.substr(0, c1));
    r.stop = to_double(text.substr(c1 + 1, c2 - c1 - 1));
    const double cnt = to_double(text.substr(c2 + 1));
    r.count = static_cast<int>(cnt);
    if (r.count < 1 || cnt != r.count)
        throw ConfigError("range count must be a positive integer");
    return r;
}

}  // namespace fracbvp
