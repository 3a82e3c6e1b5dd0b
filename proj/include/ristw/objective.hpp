// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <ristw/channel.hpp>
#include <ristw/manifold.hpp>
#include <ristw/rng.hpp>
#include <ristw/scenario.hpp>

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <cstdint>

namespace ristw {

// Everything the phase optimization needs, with the per-hop channels folded
// into one composite matrix per direction: row f of c_down (c_up) is the
// cascade through element f on the downlink (uplink) carrier. The budget and
// noise figures come along so objective values are self-contained.
struct CompositeContext {
    Eigen::MatrixXcd c_down;
    Eigen::MatrixXcd c_up;
    double eta = 0.5;
    double p_down_max_w = 1.0;
    double p_up_max_w = 1.0;
    double noise_down_w = 1.0;
    double noise_up_w = 1.0;
};

inline CompositeContext build_context(const ChannelSet& ch, const SystemParams& p, double eta) {
    if (!(eta >= 0.0 && eta <= 1.0)) throw domain_error("eta must lie in [0, 1]");
    const Eigen::Index f = ch.g_down.rows();
    if (ch.g_up.rows() != f || ch.h_down.size() != f || ch.h_up.size() != f)
        throw dimension_error("channel links disagree on the number of elements");
    if (ch.g_up.cols() != ch.g_down.cols())
        throw dimension_error("channel links disagree on the number of antennas");
    CompositeContext ctx;
    ctx.c_down = ch.h_down.conjugate().asDiagonal() * ch.g_down;
    ctx.c_up = ch.h_up.asDiagonal() * ch.g_up.conjugate();
    ctx.eta = eta;
    ctx.p_down_max_w = p.p_down_max_w;
    ctx.p_up_max_w = p.p_up_max_w;
    ctx.noise_down_w = p.noise_down_w;
    ctx.noise_up_w = p.noise_up_w;
    return ctx;
}

namespace detail {

inline void check_phase_dim(const CompositeContext& ctx, const PhaseVector& b) {
    if (b.size() != ctx.c_down.rows())
        throw dimension_error("phase vector length does not match the composite channel");
}

} // namespace detail

/// Downlink signal-to-noise ratio for an arbitrary transmit beam.
inline double snr_downlink(const CompositeContext& ctx, const PhaseVector& b,
                           const Eigen::VectorXcd& w) {
    detail::check_phase_dim(ctx, b);
    if (w.size() != ctx.c_down.cols()) throw dimension_error("transmit beam length mismatch");
    const std::complex<double> g = (b.entries().adjoint() * ctx.c_down * w)(0);
    return std::norm(g) / ctx.noise_down_w;
}

/// Uplink signal-to-noise ratio for an arbitrary receive combiner and
/// transmit power.
inline double snr_uplink(const CompositeContext& ctx, const PhaseVector& b,
                         const Eigen::VectorXcd& v, double p_up_w) {
    detail::check_phase_dim(ctx, b);
    if (v.size() != ctx.c_up.cols()) throw dimension_error("receive combiner length mismatch");
    const std::complex<double> g = (b.entries().adjoint() * ctx.c_up * v.conjugate())(0);
    return p_up_w * std::norm(g) / ctx.noise_up_w;
}

/// Power-constrained matched transmit beam; attains the downlink ratio
/// p_down_max |b^H c_down|^2 / noise.
inline Eigen::VectorXcd mrt_transmit(const CompositeContext& ctx, const PhaseVector& b) {
    detail::check_phase_dim(ctx, b);
    const Eigen::RowVectorXcd row = b.entries().adjoint() * ctx.c_down;
    const double n = row.norm();
    if (n == 0.0) throw zero_channel_error("downlink composite channel vanished");
    return std::sqrt(ctx.p_down_max_w) / n * row.adjoint();
}

/// Unit-norm matched receive combiner; attains the uplink ratio
/// p_up |b^H c_up|^2 / noise.
inline Eigen::VectorXcd mrc_receive(const CompositeContext& ctx, const PhaseVector& b) {
    detail::check_phase_dim(ctx, b);
    const Eigen::RowVectorXcd row = b.entries().adjoint() * ctx.c_up;
    const double n = row.norm();
    if (n == 0.0) throw zero_channel_error("uplink composite channel vanished");
    return row.transpose() / n;
}

/// Weighted sum rate with both beamformers already at their closed-form
/// optimum, leaving the reflection phases as the only free variable.
inline double objective_f(const CompositeContext& ctx, const PhaseVector& b) {
    detail::check_phase_dim(ctx, b);
    const double s_d = ctx.p_down_max_w / ctx.noise_down_w *
                       (b.entries().adjoint() * ctx.c_down).squaredNorm();
    const double s_u =
        ctx.p_up_max_w / ctx.noise_up_w * (b.entries().adjoint() * ctx.c_up).squaredNorm();
    return ctx.eta * std::log2(1.0 + s_d) + (1.0 - ctx.eta) * std::log2(1.0 + s_u);
}

/// Unconstrained (ambient-space) gradient of objective_f with respect to
/// the stored phase vector, scaled so that the directional derivative along
/// any feasible direction t equals Re<g, t>.
inline ComplexVector euclid_gradient(const CompositeContext& ctx, const PhaseVector& b) {
    detail::check_phase_dim(ctx, b);
    const Eigen::VectorXcd bd = ctx.c_down.adjoint() * b.entries();
    const Eigen::VectorXcd bu = ctx.c_up.adjoint() * b.entries();
    const double gain_d = ctx.p_down_max_w / ctx.noise_down_w;
    const double gain_u = ctx.p_up_max_w / ctx.noise_up_w;
    const double s_d = gain_d * bd.squaredNorm();
    const double s_u = gain_u * bu.squaredNorm();
    const double scale = 2.0 / std::log(2.0);
    return scale * (ctx.eta * gain_d / (1.0 + s_d) * (ctx.c_down * bd) +
                    (1.0 - ctx.eta) * gain_u / (1.0 + s_u) * (ctx.c_up * bu));
}

struct BeamformerPair {
    Eigen::VectorXcd transmit; // squared norm equals the downlink budget (zero on a dead link)
    Eigen::VectorXcd receive;  // unit norm
    double p_up_w = 0.0;
};

struct TwoWaySolution {
    PhaseVector phases;
    BeamformerPair beams;
    double rate_down = 0.0;
    double rate_up = 0.0;
    double objective = 0.0;
    RcgTrace trace;
};

namespace detail {

inline TwoWaySolution finish_solution(const CompositeContext& ctx, PhaseVector b,
                                      RcgTrace trace) {
    TwoWaySolution sol{std::move(b), {}, 0.0, 0.0, 0.0, std::move(trace)};
    const Eigen::Index m = ctx.c_down.cols();
    sol.beams.p_up_w = ctx.p_up_max_w;
    try {
        sol.beams.transmit = mrt_transmit(ctx, sol.phases);
        sol.rate_down = std::log2(1.0 + snr_downlink(ctx, sol.phases, sol.beams.transmit));
    } catch (const zero_channel_error&) {
        sol.beams.transmit = Eigen::VectorXcd::Zero(m);
        sol.rate_down = 0.0;
    }
    try {
        sol.beams.receive = mrc_receive(ctx, sol.phases);
        sol.rate_up =
            std::log2(1.0 + snr_uplink(ctx, sol.phases, sol.beams.receive, sol.beams.p_up_w));
    } catch (const zero_channel_error&) {
        sol.beams.receive = Eigen::VectorXcd::Unit(m, 0);
        sol.rate_up = 0.0;
    }
    sol.objective = ctx.eta * sol.rate_down + (1.0 - ctx.eta) * sol.rate_up;
    return sol;
}

} // namespace detail

/// Joint design: curvature-aware ascent over the reflection phases with the
/// matched beams substituted in closed form.
inline TwoWaySolution two_way_optimize(const CompositeContext& ctx, const PhaseVector& b0,
                                       const RcgConfig& cfg = RcgConfig{}) {
    detail::check_phase_dim(ctx, b0);
    auto value = [&ctx](const PhaseVector& b) { return objective_f(ctx, b); };
    auto grad = [&ctx](const PhaseVector& b) { return euclid_gradient(ctx, b); };
    auto run = rcg_maximize(value, grad, b0, cfg);
    return detail::finish_solution(ctx, std::move(run.b), std::move(run.trace));
}

/// Independent stream id for randomized phase initializations.
inline constexpr unsigned kStreamPhaseInit = 4;

/// Best of `starts` runs: the all-ones start plus seeded uniform-phase
/// restarts. Deterministic for a fixed (seed, starts) pair.
inline TwoWaySolution two_way_multistart(const CompositeContext& ctx, int starts,
                                         std::uint64_t seed,
                                         const RcgConfig& cfg = RcgConfig{}) {
    if (starts < 1) throw domain_error("two_way_multistart: need at least one start");
    const Eigen::Index f = ctx.c_down.rows();
    NormalStream ns(seed, kStreamPhaseInit);
    TwoWaySolution best = two_way_optimize(ctx, PhaseVector::ones(f), cfg);
    for (int s = 1; s < starts; ++s) {
        Eigen::VectorXcd raw(f);
        for (Eigen::Index i = 0; i < f; ++i)
            raw[i] = std::polar(1.0, 2.0 * M_PI * ns.uniform());
        auto cand = two_way_optimize(ctx, PhaseVector(raw), cfg);
        if (cand.objective > best.objective) best = std::move(cand);
    }
    return best;
}

} // namespace ristw
