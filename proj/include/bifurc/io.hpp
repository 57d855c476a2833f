#pragma once

// Config files, serialization and run manifests.
//
// Config format: flat key-value, one `key = value` per line, '#' comments.
// Values may be decimal or exact "p/q" rationals; rational literals keep the
// exact-arithmetic paths exact end to end.

#include "bifurc/jets.hpp"
#include "bifurc/model.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <variant>

// vendored single-header nlohmann/json
#include <json.hpp>

namespace bifurc {

using json = nlohmann::json;

struct Config {
    std::map<std::string, std::string> kv;

    bool has(const std::string& key) const { return kv.count(key) > 0; }
    std::string get(const std::string& key) const;
    std::string get_or(const std::string& key, const std::string& fallback) const;
    Rat get_rational(const std::string& key) const { return parse_rational(get(key)); }
    double get_double(const std::string& key) const { return to_double(get_rational(key)); }
};

Config parse_config_text(const std::string& text);
Config load_config(const std::string& path);

Params<Rat> params_from_config(const Config& c);
template <class K>
Params<K> params_cast(const Params<Rat>& p) {
    return {K(to_double(p.m)), K(to_double(p.n)), K(to_double(p.eps)), K(to_double(p.k))};
}
inline Params<double> params_to_double(const Params<Rat>& p) {
    return {to_double(p.m), to_double(p.n), to_double(p.eps), to_double(p.k)};
}

// --- fixed-width float formatting (17 significant digits, reproducible) ---
std::string format_double(double x);

// --- jet serialization -----------------------------------------------------
// {"vars":[...], "max_degree":N, "mode":"rational"|"float",
//  "terms":[{"exp":[...],"num":"..","den":".."} | {"exp":[...],"val":..}]}

using JetAny = std::variant<Jet<Rat>, Jet<double>>;

json jet_to_json(const Jet<Rat>& j);
json jet_to_json(const Jet<double>& j);
JetAny jet_from_json(const json& js);

// --- threshold report ------------------------------------------------------
json thresholds_to_json(const Params<Rat>& p);
json thresholds_to_json(const Params<double>& p);

// --- run manifests ----------------------------------------------------------
std::uint64_t fnv1a64(const std::string& bytes);
std::string file_checksum(const std::string& path);

struct RunManifest {
    std::string command;
    json config;
    std::string version;
    std::vector<std::pair<std::string, std::string>> outputs;  // path, checksum
    double wall_seconds = 0;

    void add_output(const std::string& path);
    void write(const std::string& path) const;
};

extern const char* kToolVersion;

}  // namespace bifurc
