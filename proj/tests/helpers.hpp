// SPDX-License-Identifier: Apache-2.0
#pragma once

// Test-side utilities and independent oracles. Anything used to check the
// library (finite differences, brute-force grids, moment estimates) is
// written out directly here instead of calling the code under test.

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <functional>
#include <random>

namespace testutil {

using Complex = std::complex<double>;
using CVec = Eigen::VectorXcd;
using CMat = Eigen::MatrixXcd;

inline std::mt19937_64 rng(std::uint64_t seed) { return std::mt19937_64(seed); }

inline double uniform01(std::mt19937_64& g) {
    return static_cast<double>(g() >> 11) * 0x1.0p-53;
}

/// Unit-modulus vector with i.i.d. uniform phases.
inline CVec random_unit_modulus(std::mt19937_64& g, Eigen::Index n) {
    CVec b(n);
    for (Eigen::Index i = 0; i < n; ++i)
        b[i] = std::polar(1.0, 2.0 * M_PI * uniform01(g));
    return b;
}

/// Complex vector with standard-normal-ish entries (Box-Muller).
inline CVec random_complex_vector(std::mt19937_64& g, Eigen::Index n) {
    CVec v(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const double r = std::sqrt(-2.0 * std::log(1.0 - uniform01(g)));
        const double a = 2.0 * M_PI * uniform01(g);
        v[i] = Complex(r * std::cos(a), r * std::sin(a)) * M_SQRT1_2;
    }
    return v;
}

inline CMat random_complex_matrix(std::mt19937_64& g, Eigen::Index rows, Eigen::Index cols) {
    CMat m(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r)
        for (Eigen::Index c = 0; c < cols; ++c) {
            const double rad = std::sqrt(-2.0 * std::log(1.0 - uniform01(g)));
            const double ang = 2.0 * M_PI * uniform01(g);
            m(r, c) = Complex(rad * std::cos(ang), rad * std::sin(ang)) * M_SQRT1_2;
        }
    return m;
}

/// Central finite difference of f along direction t, moving on the unit-
/// modulus set by explicit elementwise normalization (independent of the
/// library retraction).
inline double fd_directional_derivative(const std::function<double(const CVec&)>& f,
                                        const CVec& b, const CVec& t, double h) {
    auto normalize = [](CVec v) {
        for (Eigen::Index i = 0; i < v.size(); ++i) v[i] /= std::abs(v[i]);
        return v;
    };
    const double fp = f(normalize(b + h * t));
    const double fm = f(normalize(b - h * t));
    return (fp - fm) / (2.0 * h);
}

/// Tangency residual max_f |Re(v_f * conj(b_f))|.
inline double tangency_residual(const CVec& v, const CVec& b) {
    double worst = 0.0;
    for (Eigen::Index i = 0; i < v.size(); ++i)
        worst = std::max(worst, std::abs((v[i] * std::conj(b[i])).real()));
    return worst;
}

} // namespace testutil
