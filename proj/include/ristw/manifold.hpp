// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <optional>
#include <sstream>
#include <utility>
#include <vector>

#include "ristw/errors.hpp"

// Complex-circle manifold primitives and a Riemannian conjugate-gradient
// ascent driver. Points are length-F complex vectors with unit-modulus
// entries; the tangent space at b is { v : Re(v_f conj(b_f)) = 0 }. The
// driver is problem-agnostic: it consumes an objective and its Euclidean
// gradient as callables.

namespace ristw {

using Complex = std::complex<double>;
using ComplexVector = Eigen::VectorXcd;

/// Real part of the Euclidean complex inner product; the Riemannian metric
/// used throughout.
inline double real_inner(const ComplexVector& x, const ComplexVector& y) {
    return x.dot(y).real();
}

/// A point on the complex circle manifold: every entry has |b_f| = 1.
class PhaseVector {
public:
    explicit PhaseVector(ComplexVector entries) : entries_(std::move(entries)) {
        if (entries_.size() < 1)
            throw dimension_error("PhaseVector requires at least one entry");
        for (Eigen::Index i = 0; i < entries_.size(); ++i) {
            if (std::abs(std::abs(entries_[i]) - 1.0) > kUnitTol) {
                std::ostringstream msg;
                msg << "PhaseVector entry " << i << " has modulus " << std::abs(entries_[i]);
                throw domain_error(msg.str());
            }
        }
    }

    static PhaseVector ones(Eigen::Index size) {
        return PhaseVector(ComplexVector::Ones(size));
    }

    static PhaseVector from_phases(const Eigen::VectorXd& phases) {
        ComplexVector e(phases.size());
        for (Eigen::Index i = 0; i < phases.size(); ++i)
            e[i] = std::polar(1.0, phases[i]);
        return PhaseVector(std::move(e));
    }

    const ComplexVector& entries() const { return entries_; }
    Eigen::Index size() const { return entries_.size(); }
    const Complex& operator[](Eigen::Index i) const { return entries_[i]; }

    static constexpr double kUnitTol = 1e-12;

private:
    ComplexVector entries_;
};

/// Tangent vector at `base`: Re(entries_f * conj(base_f)) = 0 per entry.
/// Produced by project_tangent / transport; linear combinations at the same
/// base stay tangent.
struct TangentVector {
    ComplexVector entries;
    PhaseVector base;

    double norm() const { return entries.norm(); }
};

/// Driver settings. Defaults: stop at Riemannian gradient norm 1e-6 or after
/// 1000 iterations; textbook Armijo backtracking constants; Polak-Ribiere
/// coefficient clamped at zero (restart to steepest ascent).
struct RcgConfig {
    int max_iters = 1000;
    double grad_tol = 1e-6;
    double armijo_initial_step = 1.0;
    double armijo_shrink = 0.5;
    double armijo_slope = 1e-4;
    bool restart_on_negative_beta = true;
};

enum class RcgStop {
    gradient_tolerance,
    max_iterations,
    step_failure, // Armijo found no admissible step; treated as converged
};

inline const char* to_string(RcgStop s) {
    switch (s) {
        case RcgStop::gradient_tolerance: return "gradient_tolerance";
        case RcgStop::max_iterations: return "max_iterations";
        case RcgStop::step_failure: return "step_failure";
    }
    return "unknown";
}

/// One row per visited iterate: objective and Riemannian gradient norm at
/// b_k, plus the accepted step size used to leave b_k (0 for the last row).
struct RcgIteration {
    double objective;
    double grad_norm;
    double step;
};

struct RcgTrace {
    std::vector<RcgIteration> iterations;
    RcgStop termination = RcgStop::max_iterations;

    double final_objective() const {
        return iterations.empty() ? 0.0 : iterations.back().objective;
    }
    double final_grad_norm() const {
        return iterations.empty() ? 0.0 : iterations.back().grad_norm;
    }
};

/// Objective/gradient became non-finite; carries the trace accumulated so far.
class numerical_error : public error {
public:
    numerical_error(const std::string& what, RcgTrace trace)
        : error(what), trace(std::move(trace)) {}
    RcgTrace trace;
};

/// Orthogonal projection of an ambient vector onto the tangent space at b:
/// v - Re(v o conj(b)) o b. Idempotent.
inline TangentVector project_tangent(const PhaseVector& b, const ComplexVector& v) {
    if (v.size() != b.size())
        throw dimension_error("project_tangent: ambient vector length mismatch");
    ComplexVector out(v.size());
    for (Eigen::Index i = 0; i < v.size(); ++i)
        out[i] = v[i] - (v[i] * std::conj(b[i])).real() * b[i];
    return TangentVector{std::move(out), b};
}

/// Retraction: elementwise renormalization of b + alpha*d back onto the
/// circle. Signals retraction_degenerate if an entry lands on the origin.
inline PhaseVector retract(const PhaseVector& b, const TangentVector& d, double alpha) {
    if (d.entries.size() != b.size())
        throw dimension_error("retract: direction length mismatch");
    ComplexVector out(b.size());
    for (Eigen::Index i = 0; i < b.size(); ++i) {
        const Complex moved = b[i] + alpha * d.entries[i];
        const double mag = std::abs(moved);
        if (mag < 1e-14)
            throw retraction_degenerate("retract: entry magnitude below 1e-14");
        out[i] = moved / mag;
    }
    return PhaseVector(std::move(out));
}

/// Vector transport to the tangent space at b_next; identical to projecting
/// the carried entries at the destination.
inline TangentVector transport(const TangentVector& d, const PhaseVector& b_next) {
    return project_tangent(b_next, d.entries);
}

using ObjectiveFn = std::function<double(const PhaseVector&)>;
using EuclideanGradientFn = std::function<ComplexVector(const PhaseVector&)>;

struct ArmijoStep {
    double alpha;
    PhaseVector b_next;
    double objective; // objective(b_next), saved to avoid re-evaluation
};

/// Backtracking line search for ascent. `slope` is Re<grad, d> at b, which
/// must be positive. Tries alpha = armijo_initial_step * armijo_shrink^k and
/// accepts the first k with
///   objective(R_b(alpha d)) >= objective(b) + armijo_slope * alpha * slope.
/// Degenerate retractions are skipped by shrinking alpha. Returns nullopt
/// once alpha drops below 1e-16 (the driver treats that as convergence).
inline std::optional<ArmijoStep> armijo_step(const ObjectiveFn& objective,
                                             const PhaseVector& b,
                                             const TangentVector& d,
                                             double slope,
                                             const RcgConfig& cfg) {
    if (!(slope > 0.0))
        throw std::invalid_argument("armijo_step: direction is not an ascent direction");
    const double f0 = objective(b);
    double alpha = cfg.armijo_initial_step;
    while (alpha >= 1e-16) {
        try {
            PhaseVector candidate = retract(b, d, alpha);
            const double f_next = objective(candidate);
            if (f_next >= f0 + cfg.armijo_slope * alpha * slope)
                return ArmijoStep{alpha, std::move(candidate), f_next};
        } catch (const retraction_degenerate&) {
            // entry collapsed onto the origin; only a shorter step helps
        }
        alpha *= cfg.armijo_shrink;
    }
    return std::nullopt;
}

struct RcgResult {
    PhaseVector b;
    RcgTrace trace;
};

/// Riemannian conjugate-gradient ascent on the complex circle manifold.
///
/// Iterates: Armijo step along the current conjugate direction, retract,
/// re-project the Euclidean gradient, transport the previous gradient and
/// direction, then combine with the Polak-Ribiere coefficient
///   beta = Re<g_{k+1}, g_{k+1} - g_k^+> / <g_k, g_k>
/// (clamped at zero when restart_on_negative_beta is set). If the combined
/// direction loses ascent, it is reset to the gradient. Each line search is
/// warm-started at twice the previously accepted step (never below
/// cfg.armijo_initial_step), so step lengths track the local curvature
/// instead of being capped at the configured start value. Stops at
/// grad_tol, max_iters, or line-search failure; the objective trace is
/// non-decreasing by construction.
inline RcgResult rcg_maximize(const ObjectiveFn& objective,
                              const EuclideanGradientFn& euclid_gradient,
                              const PhaseVector& b0,
                              const RcgConfig& cfg) {
    if (cfg.max_iters < 1)
        throw std::invalid_argument("rcg_maximize: max_iters must be >= 1");

    RcgTrace trace;
    auto checked_gradient = [&](const PhaseVector& at) {
        TangentVector g = project_tangent(at, euclid_gradient(at));
        if (!g.entries.allFinite())
            throw numerical_error("rcg_maximize: non-finite gradient", trace);
        return g;
    };
    auto checked_objective = [&](const PhaseVector& at) {
        const double f = objective(at);
        if (!std::isfinite(f))
            throw numerical_error("rcg_maximize: non-finite objective", trace);
        return f;
    };

    PhaseVector b = b0;
    double f = checked_objective(b);
    TangentVector g = checked_gradient(b);
    TangentVector d = g;
    trace.iterations.push_back({f, g.norm(), 0.0});
    trace.termination = RcgStop::max_iterations;

    RcgConfig line_cfg = cfg;
    for (int k = 0; k < cfg.max_iters; ++k) {
        if (g.norm() <= cfg.grad_tol) {
            trace.termination = RcgStop::gradient_tolerance;
            break;
        }

        double slope = real_inner(g.entries, d.entries);
        if (slope <= 0.0) { // conjugate direction lost ascent; restart
            d = g;
            slope = g.entries.squaredNorm();
        }

        auto step = armijo_step(objective, b, d, slope, line_cfg);
        if (!step) {
            trace.termination = RcgStop::step_failure;
            break;
        }
        line_cfg.armijo_initial_step =
            std::max(cfg.armijo_initial_step, 2.0 * step->alpha);
        if (!std::isfinite(step->objective))
            throw numerical_error("rcg_maximize: non-finite objective", trace);

        PhaseVector b_next = std::move(step->b_next);
        TangentVector g_next = checked_gradient(b_next);

        const TangentVector g_carried = transport(g, b_next);
        const TangentVector d_carried = transport(d, b_next);
        const double denom = g.entries.squaredNorm();
        double beta = denom > 0.0
            ? real_inner(g_next.entries, g_next.entries - g_carried.entries) / denom
            : 0.0;
        if (cfg.restart_on_negative_beta && beta < 0.0)
            beta = 0.0;

        trace.iterations.back().step = step->alpha;
        trace.iterations.push_back({step->objective, g_next.norm(), 0.0});

        d = TangentVector{g_next.entries + beta * d_carried.entries, b_next};
        g = std::move(g_next);
        b = std::move(b_next);
    }
    if (trace.termination == RcgStop::max_iterations && g.norm() <= cfg.grad_tol)
        trace.termination = RcgStop::gradient_tolerance;

    return RcgResult{std::move(b), std::move(trace)};
}

} // namespace ristw
