// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <ristw/errors.hpp>

#include <cmath>
#include <string>

namespace ristw {

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double x) { return 10.0 * std::log10(x); }
inline double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }
inline double watts_to_dbm(double w) { return 10.0 * std::log10(w) + 30.0; }

struct Position {
    double x = 0.0;
    double y = 0.0;
};

inline double distance(const Position& a, const Position& b) {
    return std::hypot(b.x - a.x, b.y - a.y);
}

// Full description of one deployment: array sizes, power/noise budget,
// carrier split, node placement, and the statistical channel parameters.
struct SystemParams {
    int bs_antennas = 4;
    int ris_rows = 10;
    int ris_cols = 6;

    double p_down_max_w = 5.0;
    double p_up_max_w = 0.5;
    double noise_down_w = 1e-10;
    double noise_up_w = 1e-10;

    double freq_down_hz = 1855e6;
    double freq_up_hz = 1760e6;

    Position bs_pos{0.0, 0.0};
    Position ris_pos{45.0, 5.0};
    Position user_pos{50.0, 0.0};

    double rician_bs_ris = 2.0;
    double rician_ris_user = 0.5;
    double pathloss_exp_bs_ris = 2.0;
    double pathloss_exp_ris_user = 2.8;
    double ref_pathloss = 1e-3;
    double ref_distance_m = 1.0;
    double ref_freq_hz = 1e9;

    // element pitch as a fraction of the downlink wavelength
    double spacing_fraction = 0.5;

    int elements() const { return ris_rows * ris_cols; }

    void validate() const {
        auto positive = [](double v, const char* name) {
            if (!(v > 0.0)) throw domain_error(std::string(name) + " must be positive");
        };
        if (bs_antennas < 1) throw domain_error("bs_antennas must be at least 1");
        if (ris_rows < 1) throw domain_error("ris_rows must be at least 1");
        if (ris_cols < 1) throw domain_error("ris_cols must be at least 1");
        positive(p_down_max_w, "p_down_max_w");
        positive(p_up_max_w, "p_up_max_w");
        positive(noise_down_w, "noise_down_w");
        positive(noise_up_w, "noise_up_w");
        positive(freq_down_hz, "freq_down_hz");
        positive(freq_up_hz, "freq_up_hz");
        if (rician_bs_ris < 0.0) throw domain_error("rician_bs_ris must be nonnegative");
        if (rician_ris_user < 0.0) throw domain_error("rician_ris_user must be nonnegative");
        positive(pathloss_exp_bs_ris, "pathloss_exp_bs_ris");
        positive(pathloss_exp_ris_user, "pathloss_exp_ris_user");
        if (!(ref_pathloss > 0.0) || ref_pathloss > 1.0)
            throw domain_error("ref_pathloss must be in (0, 1]");
        positive(ref_distance_m, "ref_distance_m");
        positive(ref_freq_hz, "ref_freq_hz");
        positive(spacing_fraction, "spacing_fraction");
    }
};

inline SystemParams default_params() { return SystemParams{}; }

} // namespace ristw
