#include "bifurc/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace bifurc {

const char* kToolVersion = "bifurc 1.0.0";

std::string Config::get(const std::string& key) const {
    auto it = kv.find(key);
    if (it == kv.end()) throw StructuredError("config: missing key '" + key + "'");
    return it->second;
}
std::string Config::get_or(const std::string& key, const std::string& fallback) const {
    auto it = kv.find(key);
    return it == kv.end() ? fallback : it->second;
}

Config parse_config_text(const std::string& text) {
    Config c;
    std::istringstream is(text);
    std::string line;
    int lineno = 0;
    auto trim = [](std::string s) {
        auto b = s.find_first_not_of(" \t\r");
        auto e = s.find_last_not_of(" \t\r");
        return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
    };
    while (std::getline(is, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw StructuredError("config line " + std::to_string(lineno) + ": expected key = value");
        std::string key = trim(line.substr(0, eq)), val = trim(line.substr(eq + 1));
        if (key.empty() || val.empty())
            throw StructuredError("config line " + std::to_string(lineno) + ": empty key or value");
        c.kv[key] = val;
    }
    return c;
}

Config load_config(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw StructuredError("config: cannot open '" + path + "'");
    std::stringstream ss;
    ss << f.rdbuf();
    return parse_config_text(ss.str());
}

Params<Rat> params_from_config(const Config& c) {
    Params<Rat> p{c.get_rational("m"), c.get_rational("n"), c.get_rational("eps"),
                  c.get_rational("k")};
    p.validate();
    return p;
}

std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

// --- jet serialization -----------------------------------------------------

json jet_to_json(const Jet<Rat>& j) {
    json terms = json::array();
    for (const auto& [e, c] : j.terms()) {
        json exp = json::array();
        for (auto x : e) exp.push_back(int(x));
        terms.push_back({{"exp", exp},
                         {"num", boost::multiprecision::numerator(c).str()},
                         {"den", boost::multiprecision::denominator(c).str()}});
    }
    return {{"vars", j.vars()}, {"max_degree", j.max_degree()}, {"mode", "rational"}, {"terms", terms}};
}

json jet_to_json(const Jet<double>& j) {
    json terms = json::array();
    for (const auto& [e, c] : j.terms()) {
        json exp = json::array();
        for (auto x : e) exp.push_back(int(x));
        terms.push_back({{"exp", exp}, {"val", c}});
    }
    return {{"vars", j.vars()}, {"max_degree", j.max_degree()}, {"mode", "float"}, {"terms", terms}};
}

JetAny jet_from_json(const json& js) {
    VarList vars = js.at("vars").get<VarList>();
    int deg = js.at("max_degree").get<int>();
    std::string mode = js.at("mode").get<std::string>();
    auto read_exp = [&](const json& t) {
        Exp e;
        for (const auto& x : t.at("exp")) e.push_back(static_cast<unsigned char>(x.get<int>()));
        if (e.size() != vars.size()) throw StructuredError("jet json: exponent arity mismatch");
        return e;
    };
    if (mode == "rational") {
        Jet<Rat> j(vars, deg);
        for (const auto& t : js.at("terms"))
            j.set_coeff(read_exp(t), Rat(Int(t.at("num").get<std::string>()),
                                         Int(t.at("den").get<std::string>())));
        return j;
    }
    if (mode == "float") {
        Jet<double> j(vars, deg);
        for (const auto& t : js.at("terms")) j.set_coeff(read_exp(t), t.at("val").get<double>());
        return j;
    }
    throw StructuredError("jet json: unknown mode '" + mode + "'");
}

// --- threshold report ------------------------------------------------------

namespace {

json rat_to_json(const Rat& r) {
    return {{"num", boost::multiprecision::numerator(r).str()},
            {"den", boost::multiprecision::denominator(r).str()},
            {"approx", to_double(r)}};
}
json rat_to_json(double r) { return {{"approx", r}}; }

template <class K>
json thresholds_json_impl(const Params<K>& p) {
    auto t = thresholds(p);
    json out;
    out["eps1"] = rat_to_json(t.eps1);
    out["eps2"] = rat_to_json(t.eps2);
    if (p.n < K(1)) out["eps3"] = rat_to_json(t.eps3);
    out["eps4"] = rat_to_json(t.eps4);
    if (t.eps_minus) out["eps_minus"] = rat_to_json(*t.eps_minus);
    if (t.eps_plus) out["eps_plus"] = rat_to_json(*t.eps_plus);
    out["kT"] = rat_to_json(t.kT);
    out["kSN"] = rat_to_json(t.kSN);
    out["kStar"] = rat_to_json(t.kStar);
    if (t.kHminus) {
        out["kHminus"] = {{"approx", t.kHminus->value()},
                          {"a", rat_to_json(t.kHminus->a)},
                          {"b", rat_to_json(t.kHminus->b)},
                          {"radicand", rat_to_json(t.kHminus->rad)}};
        out["kHplus"] = {{"approx", t.kHplus->value()},
                         {"a", rat_to_json(t.kHplus->a)},
                         {"b", rat_to_json(t.kHplus->b)},
                         {"radicand", rat_to_json(t.kHplus->rad)}};
    }
    out["Y2L"] = rat_to_json(t.Y2L);
    out["Y2U"] = rat_to_json(t.Y2U);
    out["Y2SN"] = rat_to_json(t.Y2SN);
    out["Y2T"] = rat_to_json(t.Y2T);
    out["R0"] = rat_to_json(t.R0);
    return out;
}

}  // namespace

json thresholds_to_json(const Params<Rat>& p) { return thresholds_json_impl(p); }
json thresholds_to_json(const Params<double>& p) { return thresholds_json_impl(p); }

// --- manifests ---------------------------------------------------------------

std::uint64_t fnv1a64(const std::string& bytes) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string file_checksum(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw StructuredError("checksum: cannot open '" + path + "'");
    std::stringstream ss;
    ss << f.rdbuf();
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016llx",
                  static_cast<unsigned long long>(fnv1a64(ss.str())));
    return std::string("fnv1a64:") + buf;
}

void RunManifest::add_output(const std::string& path) {
    outputs.emplace_back(path, file_checksum(path));
}

void RunManifest::write(const std::string& path) const {
    json j;
    j["command"] = command;
    j["config"] = config;
    j["version"] = version.empty() ? kToolVersion : version;
    j["wall_seconds"] = wall_seconds;
    json outs = json::array();
    for (const auto& [p, c] : outputs) outs.push_back({{"path", p}, {"checksum", c}});
    j["outputs"] = outs;
    std::ofstream f(path);
    if (!f) throw StructuredError("manifest: cannot write '" + path + "'");
    f << j.dump(2) << "\n";
}

}  // namespace bifurc
