// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <ristw/objective.hpp>

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <string>
#include <utility>

namespace ristw {

/// Unit-modulus vector matching the phases of j elementwise; maximizes
/// Re(b^H j) = sum_f |j_f| over the unit-modulus set.
inline PhaseVector align_to(const Eigen::VectorXcd& j) {
    Eigen::VectorXcd b(j.size());
    for (Eigen::Index i = 0; i < j.size(); ++i) b[i] = std::polar(1.0, std::arg(j[i]));
    return PhaseVector(b);
}

struct OneWayConfig {
    int max_rounds = 50;
    double tol = 1e-6;
};

struct OneWaySolution {
    PhaseVector phases;
    Eigen::VectorXcd beam; // transmit beam (downlink) or unit combiner (uplink)
    double rate = 0.0;
    int rounds = 0;
};

/// Alternate elementwise phase alignment with the matched transmit beam,
/// caring only about the downlink.
inline OneWaySolution oneway_downlink(const CompositeContext& ctx,
                                      const OneWayConfig& cfg = OneWayConfig{}) {
    if (cfg.max_rounds < 1) throw domain_error("max_rounds must be at least 1");
    PhaseVector b = PhaseVector::ones(ctx.c_down.rows());
    Eigen::VectorXcd w;
    try {
        w = mrt_transmit(ctx, b);
    } catch (const zero_channel_error&) {
        return {b, Eigen::VectorXcd::Zero(ctx.c_down.cols()), 0.0, 0};
    }
    double rate = std::log2(1.0 + snr_downlink(ctx, b, w));
    int rounds = 0;
    while (rounds < cfg.max_rounds) {
        ++rounds;
        b = align_to(ctx.c_down * w);
        w = mrt_transmit(ctx, b);
        const double next = std::log2(1.0 + snr_downlink(ctx, b, w));
        const double gain = next - rate;
        rate = next;
        if (gain < cfg.tol) break;
    }
    return {b, w, rate, rounds};
}

/// Alternate elementwise phase alignment with the matched receive combiner,
/// caring only about the uplink. Transmit power stays at its cap.
inline OneWaySolution oneway_uplink(const CompositeContext& ctx,
                                    const OneWayConfig& cfg = OneWayConfig{}) {
    if (cfg.max_rounds < 1) throw domain_error("max_rounds must be at least 1");
    PhaseVector b = PhaseVector::ones(ctx.c_up.rows());
    Eigen::VectorXcd v;
    try {
        v = mrc_receive(ctx, b);
    } catch (const zero_channel_error&) {
        return {b, Eigen::VectorXcd::Unit(ctx.c_up.cols(), 0), 0.0, 0};
    }
    double rate = std::log2(1.0 + snr_uplink(ctx, b, v, ctx.p_up_max_w));
    int rounds = 0;
    while (rounds < cfg.max_rounds) {
        ++rounds;
        b = align_to(ctx.c_up * v.conjugate());
        v = mrc_receive(ctx, b);
        const double next = std::log2(1.0 + snr_uplink(ctx, b, v, ctx.p_up_max_w));
        const double gain = next - rate;
        rate = next;
        if (gain < cfg.tol) break;
    }
    return {b, v, rate, rounds};
}

struct RatePoint {
    double rate_down = 0.0;
    double rate_up = 0.0;
    std::string scheme;
    double eta = 0.5;
};

namespace detail {

inline double matched_rate_down(const CompositeContext& ctx, const PhaseVector& b) {
    try {
        return std::log2(1.0 + snr_downlink(ctx, b, mrt_transmit(ctx, b)));
    } catch (const zero_channel_error&) {
        return 0.0;
    }
}

inline double matched_rate_up(const CompositeContext& ctx, const PhaseVector& b) {
    try {
        return std::log2(1.0 + snr_uplink(ctx, b, mrc_receive(ctx, b), ctx.p_up_max_w));
    } catch (const zero_channel_error&) {
        return 0.0;
    }
}

} // namespace detail

/// Operating point reached by freezing the surface at b and letting both
/// ends use their matched beams.
inline RatePoint evaluate_rates(const CompositeContext& ctx, const PhaseVector& b,
                                std::string scheme) {
    return {detail::matched_rate_down(ctx, b), detail::matched_rate_up(ctx, b),
            std::move(scheme), ctx.eta};
}

/// Run the surface in its downlink-tuned state a fraction eta of the time
/// and in its uplink-tuned state the rest; the off-direction still operates
/// through whatever the surface happens to be, with freshly matched beams.
inline RatePoint time_sharing(const CompositeContext& ctx, const OneWaySolution& down,
                              const OneWaySolution& up, double eta) {
    if (!(eta >= 0.0 && eta <= 1.0)) throw domain_error("eta must lie in [0, 1]");
    const RatePoint at_d = evaluate_rates(ctx, down.phases, "");
    const RatePoint at_u = evaluate_rates(ctx, up.phases, "");
    return {eta * at_d.rate_down + (1.0 - eta) * at_u.rate_down,
            eta * at_d.rate_up + (1.0 - eta) * at_u.rate_up, "time_sharing", eta};
}

inline RatePoint time_sharing(const CompositeContext& ctx, double eta,
                              const OneWayConfig& cfg = OneWayConfig{}) {
    return time_sharing(ctx, oneway_downlink(ctx, cfg), oneway_uplink(ctx, cfg), eta);
}

/// Elementwise weighted average of the principal phase angles.
inline PhaseVector average_phases(const PhaseVector& down, const PhaseVector& up, double eta) {
    if (down.size() != up.size())
        throw dimension_error("phase vectors to blend differ in length");
    if (!(eta >= 0.0 && eta <= 1.0)) throw domain_error("eta must lie in [0, 1]");
    Eigen::VectorXcd out(down.size());
    for (Eigen::Index i = 0; i < down.size(); ++i)
        out[i] = std::polar(1.0, eta * std::arg(down[i]) + (1.0 - eta) * std::arg(up[i]));
    return PhaseVector(out);
}

/// One static surface whose phases blend the two single-direction designs.
inline RatePoint phase_averaging(const CompositeContext& ctx, const OneWaySolution& down,
                                 const OneWaySolution& up, double eta) {
    RatePoint p = evaluate_rates(ctx, average_phases(down.phases, up.phases, eta),
                                 "phase_averaging");
    p.eta = eta;
    return p;
}

inline RatePoint phase_averaging(const CompositeContext& ctx, double eta,
                                 const OneWayConfig& cfg = OneWayConfig{}) {
    return phase_averaging(ctx, oneway_downlink(ctx, cfg), oneway_uplink(ctx, cfg), eta);
}

} // namespace ristw
