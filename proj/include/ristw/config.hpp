// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <ristw/errors.hpp>
#include <ristw/scenario.hpp>
#include <ristw/sweep.hpp>

#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace ristw {

// One batch run, fully described: the deployment, the optimizer settings,
// and the experiment sweep (which carries copies of the first two).
struct RunConfig {
    SystemParams params;
    RcgConfig optimizer;
    SweepSpec sweep;
};

inline RunConfig default_config() {
    RunConfig cfg;
    cfg.params = default_params();
    cfg.sweep.variable = SweepVariable::bs_ris_distance;
    cfg.sweep.values = {5, 10, 15, 20, 25, 30, 35, 40, 45};
    cfg.sweep.schemes = {Scheme::two_way, Scheme::time_sharing, Scheme::phase_averaging};
    cfg.sweep.seeds = 100;
    cfg.sweep.seed_base = 1;
    cfg.sweep.eta = 0.5;
    cfg.sweep.random_starts = 0;
    cfg.sweep.base = cfg.params;
    cfg.sweep.optimizer = cfg.optimizer;
    return cfg;
}

namespace detail {

inline std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

inline parse_error bad_value(std::size_t lineno, const std::string& what) {
    return parse_error("config line " + std::to_string(lineno) + ": " + what);
}

inline double num(const std::string& s, std::size_t lineno) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument("trailing junk");
        return v;
    } catch (const std::exception&) {
        throw bad_value(lineno, "expected a number, got '" + s + "'");
    }
}

inline int integer(const std::string& s, std::size_t lineno) {
    try {
        std::size_t pos = 0;
        const long v = std::stol(s, &pos);
        if (pos != s.size()) throw std::invalid_argument("trailing junk");
        return static_cast<int>(v);
    } catch (const std::exception&) {
        throw bad_value(lineno, "expected an integer, got '" + s + "'");
    }
}

inline std::uint64_t unsigned64(const std::string& s, std::size_t lineno) {
    try {
        std::size_t pos = 0;
        const unsigned long long v = std::stoull(s, &pos);
        if (pos != s.size()) throw std::invalid_argument("trailing junk");
        return v;
    } catch (const std::exception&) {
        throw bad_value(lineno, "expected a nonnegative integer, got '" + s + "'");
    }
}

inline std::vector<std::string> split_list(const std::string& s, std::size_t lineno) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (item.empty()) throw bad_value(lineno, "empty element in list '" + s + "'");
        out.push_back(item);
    }
    if (out.empty()) throw bad_value(lineno, "empty list");
    return out;
}

} // namespace detail

/// Parse the key-value config dialect: one `key = value` per line, `#`
/// starts a comment, unknown keys are errors. Frequencies are given in MHz,
/// noise in dBm and the reference loss in dB; everything is converted to
/// linear SI units here, at the boundary.
inline RunConfig parse_config_text(const std::string& text) {
    RunConfig cfg = default_config();
    SystemParams& p = cfg.params;
    RcgConfig& o = cfg.optimizer;
    SweepSpec& s = cfg.sweep;

    std::istringstream in(text);
    std::string raw;
    std::size_t lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        const auto hash = raw.find('#');
        if (hash != std::string::npos) raw.erase(hash);
        const std::string line = detail::trim(raw);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw detail::bad_value(lineno, "expected 'key = value', got '" + line + "'");
        const std::string key = detail::trim(line.substr(0, eq));
        const std::string val = detail::trim(line.substr(eq + 1));
        if (key.empty()) throw detail::bad_value(lineno, "missing key");
        if (val.empty()) throw detail::bad_value(lineno, "missing value for '" + key + "'");

        if (key == "bs_antennas") p.bs_antennas = detail::integer(val, lineno);
        else if (key == "ris_rows") p.ris_rows = detail::integer(val, lineno);
        else if (key == "ris_cols") p.ris_cols = detail::integer(val, lineno);
        else if (key == "p_down_max_w") p.p_down_max_w = detail::num(val, lineno);
        else if (key == "p_up_max_w") p.p_up_max_w = detail::num(val, lineno);
        else if (key == "noise_down_dbm") p.noise_down_w = dbm_to_watts(detail::num(val, lineno));
        else if (key == "noise_up_dbm") p.noise_up_w = dbm_to_watts(detail::num(val, lineno));
        else if (key == "freq_down_mhz") p.freq_down_hz = 1e6 * detail::num(val, lineno);
        else if (key == "freq_up_mhz") p.freq_up_hz = 1e6 * detail::num(val, lineno);
        else if (key == "bs_x") p.bs_pos.x = detail::num(val, lineno);
        else if (key == "bs_y") p.bs_pos.y = detail::num(val, lineno);
        else if (key == "ris_x") p.ris_pos.x = detail::num(val, lineno);
        else if (key == "ris_y") p.ris_pos.y = detail::num(val, lineno);
        else if (key == "user_x") p.user_pos.x = detail::num(val, lineno);
        else if (key == "user_y") p.user_pos.y = detail::num(val, lineno);
        else if (key == "rician_bs_ris") p.rician_bs_ris = detail::num(val, lineno);
        else if (key == "rician_ris_user") p.rician_ris_user = detail::num(val, lineno);
        else if (key == "pathloss_exp_bs_ris") p.pathloss_exp_bs_ris = detail::num(val, lineno);
        else if (key == "pathloss_exp_ris_user")
            p.pathloss_exp_ris_user = detail::num(val, lineno);
        else if (key == "ref_pathloss_db") p.ref_pathloss = db_to_linear(detail::num(val, lineno));
        else if (key == "ref_distance_m") p.ref_distance_m = detail::num(val, lineno);
        else if (key == "ref_freq_mhz") p.ref_freq_hz = 1e6 * detail::num(val, lineno);
        else if (key == "spacing_fraction") p.spacing_fraction = detail::num(val, lineno);
        else if (key == "max_iters") o.max_iters = detail::integer(val, lineno);
        else if (key == "grad_tol") o.grad_tol = detail::num(val, lineno);
        else if (key == "armijo_initial_step") o.armijo_initial_step = detail::num(val, lineno);
        else if (key == "armijo_shrink") o.armijo_shrink = detail::num(val, lineno);
        else if (key == "armijo_slope") o.armijo_slope = detail::num(val, lineno);
        else if (key == "variable") {
            try {
                s.variable = variable_from_string(val);
            } catch (const parse_error& e) {
                throw detail::bad_value(lineno, e.what());
            }
        } else if (key == "values") {
            s.values.clear();
            for (const auto& item : detail::split_list(val, lineno))
                s.values.push_back(detail::num(item, lineno));
        } else if (key == "schemes") {
            s.schemes.clear();
            for (const auto& item : detail::split_list(val, lineno)) {
                try {
                    s.schemes.push_back(scheme_from_string(item));
                } catch (const parse_error& e) {
                    throw detail::bad_value(lineno, e.what());
                }
            }
        } else if (key == "seeds") s.seeds = detail::integer(val, lineno);
        else if (key == "seed_base") s.seed_base = detail::unsigned64(val, lineno);
        else if (key == "eta") s.eta = detail::num(val, lineno);
        else if (key == "random_starts") s.random_starts = detail::integer(val, lineno);
        else throw detail::bad_value(lineno, "unknown key '" + key + "'");
    }

    s.base = p;
    s.optimizer = o;
    return cfg;
}

inline RunConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open config file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str());
}

} // namespace ristw
