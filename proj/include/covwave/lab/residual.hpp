// SPDX-FileCopyrightText: 2026 covwave contributors
// SPDX-License-Identifier: Apache-2.0
#ifndef COVWAVE_LAB_RESIDUAL_HPP
#define COVWAVE_LAB_RESIDUAL_HPP

/// Residual operators: apply a wave equation to a sampled field and
/// return the pointwise defect. Spatial derivatives are spectral (exact
/// for band-limited periodic fields); time derivatives use 4th-order
/// centered differences on five snapshots, so the defect of a true
/// solution is O(h^4) in the snapshot spacing rather than zero by
/// construction — the check stays independent of how the field was made.

#include "covwave/lab/evolve.hpp"

#include <algorithm>
#include <array>
#include <functional>

namespace covwave::lab {

/// Grid samples of a time-dependent field at time t.
using Sampler = std::function<std::vector<Complex>(double)>;

/// Scalar potential V(x).
using PotentialFn = std::function<double(double)>;

namespace detail {

/// The five snapshots f(t + j h), j = -2..2.
inline std::array<std::vector<Complex>, 5> snapshots(const Sampler& f, double t, double h) {
    return {f(t - 2.0 * h), f(t - h), f(t), f(t + h), f(t + 2.0 * h)};
}

} // namespace detail

/// 4th-order centered d/dt: (f(-2h) - 8 f(-h) + 8 f(h) - f(2h)) / 12h.
inline std::vector<Complex> fd_time1(const Sampler& f, double t, double h) {
    COVWAVE_REQUIRE(h > 0.0, "snapshot spacing must be positive");
    const std::array<std::vector<Complex>, 5> s = detail::snapshots(f, t, h);
    std::vector<Complex> out(s[2].size());
    for (std::size_t j = 0; j < out.size(); ++j)
        out[j] = (s[0][j] - 8.0 * s[1][j] + 8.0 * s[3][j] - s[4][j]) / (12.0 * h);
    return out;
}

/// 4th-order centered d^2/dt^2:
/// (-f(-2h) + 16 f(-h) - 30 f(0) + 16 f(h) - f(2h)) / 12h^2.
inline std::vector<Complex> fd_time2(const Sampler& f, double t, double h) {
    COVWAVE_REQUIRE(h > 0.0, "snapshot spacing must be positive");
    const std::array<std::vector<Complex>, 5> s = detail::snapshots(f, t, h);
    std::vector<Complex> out(s[2].size());
    for (std::size_t j = 0; j < out.size(); ++j)
        out[j] = (-s[0][j] + 16.0 * s[1][j] - 30.0 * s[2][j] + 16.0 * s[3][j] - s[4][j]) /
                 (12.0 * h * h);
    return out;
}

/// Applies the first-order operator
///   L[Psi] = (hbar^2/2m) Psi_xx + i hbar Psi_t - V(x) Psi
/// at time t. L annihilates first-order solutions; with a
/// position-dependent V it is the building block of the squared-operator
/// checks.
inline std::vector<Complex> apply_first_order(const Grid1D& grid, const Sampler& f,
                                              const PotentialFn& V,
                                              const PhysicalParams& p, double t,
                                              double h) {
    COVWAVE_REQUIRE(p.m > 0.0 && p.hbar > 0.0, "m and hbar must be positive");
    const std::vector<Complex> now = f(t);
    COVWAVE_REQUIRE(now.size() == grid.size(), "sampler must match the grid");
    const std::vector<Complex> xx = spectral_derivative(grid, now, 2);
    const std::vector<Complex> dt = fd_time1(f, t, h);
    const double kin = p.hbar * p.hbar / (2.0 * p.m);
    std::vector<Complex> out(now.size());
    for (std::size_t j = 0; j < out.size(); ++j)
        out[j] = kin * xx[j] + Complex(0.0, p.hbar) * dt[j] - V(grid.point(j)) * now[j];
    return out;
}

/// L[L[Psi]]: the squared first-order operator, applied by nesting — the
/// inner application is itself sampled at the five outer snapshot times.
inline std::vector<Complex> apply_first_order_twice(const Grid1D& grid, const Sampler& f,
                                                    const PotentialFn& V,
                                                    const PhysicalParams& p, double t,
                                                    double h) {
    const Sampler inner = [&](double tt) { return apply_first_order(grid, f, V, p, tt, h); };
    return apply_first_order(grid, inner, V, p, t, h);
}

/// Pointwise defect of the constant-V equation at time t:
///   schrodinger:   (hbar^2/2m) Psi_xx + i hbar Psi_t - V Psi
///   lcse:          the same plus the -(hbar^2/2mc^2) Psi_tt correction
///   klein_gordon:  (1/c^2) Psi_tt - Psi_xx + (m^2 c^2/hbar^2) Psi
inline std::vector<Complex> equation_residual(Equation eq, const Grid1D& grid,
                                              const Sampler& f, const PhysicalParams& p,
                                              double t, double h) {
    const PotentialFn constant = [&p](double) { return p.V; };
    if (eq == Equation::schrodinger)
        return apply_first_order(grid, f, constant, p, t, h);
    COVWAVE_REQUIRE(p.c > 0.0, "c must be positive");
    std::vector<Complex> out = apply_first_order(grid, f, constant, p, t, h);
    const std::vector<Complex> tt = fd_time2(f, t, h);
    if (eq == Equation::lcse) {
        const double rel = p.hbar * p.hbar / (2.0 * p.m * p.c * p.c);
        for (std::size_t j = 0; j < out.size(); ++j) out[j] -= rel * tt[j];
        return out;
    }
    const std::vector<Complex> now = f(t);
    const std::vector<Complex> xx = spectral_derivative(grid, now, 2);
    const double mass = p.m * p.m * p.c * p.c / (p.hbar * p.hbar);
    for (std::size_t j = 0; j < out.size(); ++j)
        out[j] = tt[j] / (p.c * p.c) - xx[j] + mass * now[j];
    return out;
}

/// max_j |v_j|.
inline double max_abs(const std::vector<Complex>& v) {
    double m = 0.0;
    for (const Complex& x : v) m = std::max(m, std::abs(x));
    return m;
}

/// Continuum-normalized L2 distance sqrt(dx * sum |a_j - b_j|^2).
inline double l2_distance(const Grid1D& grid, const std::vector<Complex>& a,
                          const std::vector<Complex>& b) {
    COVWAVE_REQUIRE(a.size() == b.size() && a.size() == grid.size(),
                    "sample counts must match the grid");
    double s = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) s += std::norm(a[j] - b[j]);
    return std::sqrt(grid.spacing() * s);
}

} // namespace covwave::lab

#endif // COVWAVE_LAB_RESIDUAL_HPP
