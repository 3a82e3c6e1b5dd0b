// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <ristw/errors.hpp>
#include <ristw/rng.hpp>
#include <ristw/scenario.hpp>

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <cstdint>

namespace ristw {

inline constexpr double kSpeedOfLight = 299792458.0;

// Frequency-dependent distance law: L(d, f) = L0 (f/f0)^-2 (d/d0)^-alpha.
inline double path_loss(double distance_m, double freq_hz, double exponent,
                        const SystemParams& p) {
    if (!(distance_m > 0.0)) throw domain_error("path_loss: distance must be positive");
    if (!(freq_hz > 0.0)) throw domain_error("path_loss: frequency must be positive");
    return p.ref_pathloss * std::pow(freq_hz / p.ref_freq_hz, -2.0) *
           std::pow(distance_m / p.ref_distance_m, -exponent);
}

// Electrical length of a path, folded into [0, 2*pi).
inline double propagation_phase(double distance_m, double freq_hz) {
    return std::fmod(2.0 * M_PI * distance_m * freq_hz / kSpeedOfLight, 2.0 * M_PI);
}

inline Eigen::VectorXcd steering_ula(int count, double angle_rad, double spacing_wl) {
    if (count < 1) throw dimension_error("steering_ula: count must be at least 1");
    Eigen::VectorXcd a(count);
    const double step = 2.0 * M_PI * spacing_wl * std::sin(angle_rad);
    for (int m = 0; m < count; ++m) a[m] = std::polar(1.0, step * m);
    return a;
}

// Rectangular panel response, rows indexed first (row-major flattening).
inline Eigen::VectorXcd steering_upa(int rows, int cols, double azimuth_rad,
                                     double elevation_rad, double spacing_wl) {
    if (rows < 1 || cols < 1) throw dimension_error("steering_upa: panel must be nonempty");
    Eigen::VectorXcd a(static_cast<Eigen::Index>(rows) * cols);
    const double row_step = 2.0 * M_PI * spacing_wl * std::sin(elevation_rad);
    const double col_step = 2.0 * M_PI * spacing_wl * std::cos(elevation_rad) * std::sin(azimuth_rad);
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c)
            a[static_cast<Eigen::Index>(r) * cols + c] = std::polar(1.0, r * row_step + c * col_step);
    return a;
}

struct LosGeometry {
    double bs_ris_distance_m = 0.0;
    double ris_user_distance_m = 0.0;
    double bs_departure_rad = 0.0;   // BS array angle towards the RIS
    double ris_arrival_az_rad = 0.0; // RIS azimuth towards the BS
    double ris_user_az_rad = 0.0;    // RIS azimuth towards the user
};

inline LosGeometry derive_geometry(const SystemParams& p) {
    LosGeometry g;
    g.bs_ris_distance_m = distance(p.bs_pos, p.ris_pos);
    g.ris_user_distance_m = distance(p.ris_pos, p.user_pos);
    if (!(g.bs_ris_distance_m > 0.0)) throw geometry_error("BS and RIS positions coincide");
    if (!(g.ris_user_distance_m > 0.0)) throw geometry_error("RIS and user positions coincide");
    g.bs_departure_rad = std::atan2(p.ris_pos.y - p.bs_pos.y, p.ris_pos.x - p.bs_pos.x);
    g.ris_arrival_az_rad = std::atan2(p.bs_pos.y - p.ris_pos.y, p.bs_pos.x - p.ris_pos.x);
    g.ris_user_az_rad = std::atan2(p.user_pos.y - p.ris_pos.y, p.user_pos.x - p.ris_pos.x);
    return g;
}

// One fading realization of all four links. Matrices are RIS-elements by
// BS-antennas; vectors have one entry per RIS element.
struct ChannelSet {
    Eigen::MatrixXcd g_down;
    Eigen::MatrixXcd g_up;
    Eigen::VectorXcd h_down;
    Eigen::VectorXcd h_up;
};

namespace detail {

// Mix a unit-modulus deterministic part with unit-variance scattering so the
// mean entry power equals the distance-law gain for every Rician factor.
inline Eigen::MatrixXcd draw_link(const Eigen::MatrixXcd& los, double rician_factor,
                                  double gain, NormalStream& ns) {
    const double w_los = std::sqrt(rician_factor / (1.0 + rician_factor));
    const double w_nlos = std::sqrt(1.0 / (1.0 + rician_factor));
    const double amp = std::sqrt(gain);
    Eigen::MatrixXcd out(los.rows(), los.cols());
    for (Eigen::Index r = 0; r < los.rows(); ++r)
        for (Eigen::Index c = 0; c < los.cols(); ++c)
            out(r, c) = amp * (w_los * los(r, c) + w_nlos * ns.complex_normal());
    return out;
}

} // namespace detail

// Independent scattering streams per link so adding a link never perturbs
// the draws of another.
enum : unsigned {
    kStreamGDown = 0,
    kStreamGUp = 1,
    kStreamHDown = 2,
    kStreamHUp = 3,
};

inline ChannelSet synthesize_channels(const SystemParams& p, std::uint64_t seed) {
    p.validate();
    const LosGeometry geo = derive_geometry(p);

    // Element pitch is fixed in meters; its electrical size scales with the
    // carrier relative to the downlink design frequency.
    auto spacing_wl = [&](double freq) { return p.spacing_fraction * freq / p.freq_down_hz; };

    auto build_bs_ris = [&](double freq, unsigned stream) {
        Eigen::VectorXcd a_ris = steering_upa(p.ris_rows, p.ris_cols, geo.ris_arrival_az_rad,
                                              0.0, spacing_wl(freq));
        Eigen::VectorXcd a_bs =
            steering_ula(p.bs_antennas, geo.bs_departure_rad, spacing_wl(freq));
        const std::complex<double> rot =
            std::polar(1.0, -propagation_phase(geo.bs_ris_distance_m, freq));
        const Eigen::MatrixXcd los = rot * (a_ris * a_bs.transpose());
        NormalStream ns(seed, stream);
        const double gain = path_loss(geo.bs_ris_distance_m, freq, p.pathloss_exp_bs_ris, p);
        return detail::draw_link(los, p.rician_bs_ris, gain, ns);
    };
    auto build_ris_user = [&](double freq, unsigned stream) {
        Eigen::VectorXcd a_ris = steering_upa(p.ris_rows, p.ris_cols, geo.ris_user_az_rad,
                                              0.0, spacing_wl(freq));
        const std::complex<double> rot =
            std::polar(1.0, -propagation_phase(geo.ris_user_distance_m, freq));
        const Eigen::MatrixXcd los = rot * a_ris;
        NormalStream ns(seed, stream);
        const double gain = path_loss(geo.ris_user_distance_m, freq, p.pathloss_exp_ris_user, p);
        return Eigen::VectorXcd(detail::draw_link(los, p.rician_ris_user, gain, ns));
    };

    ChannelSet ch;
    ch.g_down = build_bs_ris(p.freq_down_hz, kStreamGDown);
    ch.g_up = build_bs_ris(p.freq_up_hz, kStreamGUp);
    ch.h_down = build_ris_user(p.freq_down_hz, kStreamHDown);
    ch.h_up = build_ris_user(p.freq_up_hz, kStreamHUp);
    return ch;
}

} // namespace ristw
