#pragma once
// Run configuration: flat key=value text files plus command-line overrides.
// Unknown keys and malformed values are configuration errors.

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace bprk {

struct RunConfig {
    std::string problem = "advection_smooth";
    long n = 0;             // nodes per dim (half-domain where periodized); 0 = default
    double dt = 0.0;        // 0 = problem default
    double t_end = -1.0;    // < 0 = problem default
    std::string scheme;     // rk1|rk2|rk3|rk4; empty = problem default
    std::string mode;       // plain|bp; empty = problem default
    std::string bounds;     // none|dmp|idp|idp_positivity_only; empty = default
    double tolerance = 0.0;  // bound widening; 0 = problem default
    std::string gamma_mode = "analytic_with_fallback";  // analytic|numeric|analytic_with_fallback
    long gamma_iters = 5;
    std::string root_method = "bisection";  // bisection|illinois
    long report_every = 10;
    long snapshot_every = 0;  // 0 = final snapshot only
    double gamma_gas = 1.4;
    long seed = 12345;  // property harness RNG seed; runs themselves are deterministic
    std::string out_dir;
    std::string dts;  // comma-separated dt list for convergence studies
};

namespace detail {

inline std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

inline double parse_double(const std::string& key, const std::string& v) {
    std::size_t pos = 0;
    double x;
    try {
        x = std::stod(v, &pos);
    } catch (const std::exception&) {
        throw std::invalid_argument("config: bad numeric value for " + key + ": " + v);
    }
    if (pos != v.size())
        throw std::invalid_argument("config: bad numeric value for " + key + ": " + v);
    return x;
}

inline long parse_long(const std::string& key, const std::string& v) {
    std::size_t pos = 0;
    long x;
    try {
        x = std::stol(v, &pos);
    } catch (const std::exception&) {
        throw std::invalid_argument("config: bad integer value for " + key + ": " + v);
    }
    if (pos != v.size())
        throw std::invalid_argument("config: bad integer value for " + key + ": " + v);
    return x;
}

}  // namespace detail

/// Apply one "key=value" assignment.
inline void apply_override(RunConfig& cfg, const std::string& kv) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos)
        throw std::invalid_argument("config: expected key=value, got: " + kv);
    const std::string key = detail::trim(kv.substr(0, eq));
    const std::string val = detail::trim(kv.substr(eq + 1));
    if (key == "problem") cfg.problem = val;
    else if (key == "n") cfg.n = detail::parse_long(key, val);
    else if (key == "dt") cfg.dt = detail::parse_double(key, val);
    else if (key == "t_end") cfg.t_end = detail::parse_double(key, val);
    else if (key == "scheme") cfg.scheme = val;
    else if (key == "mode") cfg.mode = val;
    else if (key == "bounds") cfg.bounds = val;
    else if (key == "tolerance") cfg.tolerance = detail::parse_double(key, val);
    else if (key == "gamma_mode") cfg.gamma_mode = val;
    else if (key == "gamma_iters") cfg.gamma_iters = detail::parse_long(key, val);
    else if (key == "root_method") cfg.root_method = val;
    else if (key == "report_every") cfg.report_every = detail::parse_long(key, val);
    else if (key == "snapshot_every") cfg.snapshot_every = detail::parse_long(key, val);
    else if (key == "gamma_gas") cfg.gamma_gas = detail::parse_double(key, val);
    else if (key == "seed") cfg.seed = detail::parse_long(key, val);
    else if (key == "out_dir") cfg.out_dir = val;
    else if (key == "dts") cfg.dts = val;
    else throw std::invalid_argument("config: unknown key: " + key);
}

/// Parse a flat key=value file ('#' starts a comment line).
inline RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("config: cannot open file: " + path);
    RunConfig cfg;
    std::string line;
    while (std::getline(in, line)) {
        const std::string t = detail::trim(line);
        if (t.empty() || t[0] == '#') continue;
        apply_override(cfg, t);
    }
    return cfg;
}

/// Parse the comma-separated dt list used by convergence studies.
inline std::vector<double> parse_dt_list(const std::string& s) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const std::string t = detail::trim(item);
        if (t.empty()) continue;
        out.push_back(detail::parse_double("dts", t));
    }
    if (out.empty()) throw std::invalid_argument("config: empty dt list");
    return out;
}

}  // namespace bprk
