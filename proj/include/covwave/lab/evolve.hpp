// SPDX-FileCopyrightText: 2026 covwave contributors
// SPDX-License-Identifier: Apache-2.0
#ifndef COVWAVE_LAB_EVOLVE_HPP
#define COVWAVE_LAB_EVOLVE_HPP

/// Exact per-mode evolution for the three derived wave equations with a
/// constant potential. Working in mode space makes every propagation step
/// exact (no time-stepping error), so residual and covariance checks
/// measure the equations themselves, not the integrator.
///
/// Conventions (dimensionless units, typically m = hbar = 1):
///  - first-order equation:  i hbar dPsi/dt = -(hbar^2/2m) Psi_xx + V Psi
///    per mode: Psi_k(t) = Psi_k(0) exp(-i w t), w = hbar k^2/(2m) + V/hbar
///  - relativistic second-order pair, x in lab coordinates:
///    klein_gordon:  (1/c^2) Psi_tt - Psi_xx + (m^2 c^2/hbar^2) Psi = 0
///    lcse: -(hbar^2/2mc^2) Psi_tt + i hbar Psi_t = -(hbar^2/2m) Psi_xx + V Psi
///    per mode both are two-frequency oscillators; the lcse roots solve
///    (hbar^2/2mc^2) w^2 + hbar w - (hbar^2 k^2/2m + V) = 0.
/// Negative time steps are allowed: the mode phases are exactly
/// reversible.

#include "covwave/lab/state.hpp"

#include <cmath>
#include <string>

namespace covwave::lab {

enum class Equation { schrodinger, klein_gordon, lcse };

inline std::string to_string(Equation eq) {
    switch (eq) {
        case Equation::schrodinger: return "schrodinger";
        case Equation::klein_gordon: return "klein_gordon";
        case Equation::lcse: return "lcse";
    }
    return "?";
}

struct PhysicalParams {
    double m = 1.0;
    double hbar = 1.0;
    double c = 10.0;
    double V = 0.0; ///< constant potential
    double v = 0.0; ///< boost speed (used by covariance checks only)
};

/// First-order mode frequency w = hbar k^2/(2m) + V/hbar.
inline double first_order_omega(double k, const PhysicalParams& p) {
    COVWAVE_REQUIRE(p.m > 0.0 && p.hbar > 0.0, "m and hbar must be positive");
    return p.hbar * k * k / (2.0 * p.m) + p.V / p.hbar;
}

struct BranchRoots {
    double particle;     ///< root continuous with the first-order w as c grows
    double antiparticle; ///< the other root (near -2mc^2/hbar for the lcse)
};

/// The two mode frequencies of a second-order equation.
inline BranchRoots second_order_roots(Equation eq, double k, const PhysicalParams& p) {
    COVWAVE_REQUIRE(p.hbar > 0.0 && p.c > 0.0, "hbar and c must be positive");
    if (eq == Equation::klein_gordon) {
        COVWAVE_REQUIRE(p.m >= 0.0, "mass must be non-negative");
        COVWAVE_REQUIRE(p.V == 0.0, "the klein_gordon branch carries no potential slot");
        const double w = std::sqrt(p.m * p.m * std::pow(p.c, 4) +
                                   p.c * p.c * p.hbar * p.hbar * k * k) /
                         p.hbar;
        return {w, -w};
    }
    COVWAVE_REQUIRE(eq == Equation::lcse, "first-order equation has a single frequency");
    COVWAVE_REQUIRE(p.m > 0.0, "mass must be positive");
    // a w^2 + b w - d = 0 with a = hbar^2/2mc^2, b = hbar,
    // d = hbar^2 k^2/2m + V. The particle root is written as
    // 2d/(b + sqrt(b^2 + 4ad)) so it stays fully accurate (and exactly
    // zero at k = 0, V = 0) without subtractive cancellation.
    const double a = p.hbar * p.hbar / (2.0 * p.m * p.c * p.c);
    const double b = p.hbar;
    const double d = p.hbar * p.hbar * k * k / (2.0 * p.m) + p.V;
    const double disc = b * b + 4.0 * a * d;
    if (disc <= 0.0)
        throw DomainError("mode frequency branches degenerate (discriminant <= 0); "
                          "cannot occur for V >= 0");
    const double s = std::sqrt(disc);
    return {2.0 * d / (b + s), -(b + s) / (2.0 * a)};
}

/// Attaches the time-derivative samples of a pure particle-branch state:
/// per mode, dPsi/dt = -i w_particle Psi.
inline WaveState particle_branch_init(Equation eq, const WaveState& s,
                                      const PhysicalParams& p) {
    COVWAVE_REQUIRE(eq != Equation::schrodinger,
                    "first-order states carry no derivative samples");
    std::vector<Complex> modes = fft(s.values);
    std::vector<Complex> dmodes(modes.size());
    for (std::size_t j = 0; j < modes.size(); ++j) {
        const double w = second_order_roots(eq, s.grid.wavenumber(j), p).particle;
        dmodes[j] = Complex(0.0, -w) * modes[j];
    }
    return WaveState(s.grid, s.values, ifft(std::move(dmodes)), s.time);
}

inline WaveState evolve(Equation eq, const WaveState& s, const PhysicalParams& p,
                        double t_final) {
    const double dt = t_final - s.time;
    if (eq == Equation::schrodinger) {
        COVWAVE_REQUIRE(!s.second_order(),
                        "first-order evolution takes a first-order state");
        std::vector<Complex> modes = fft(s.values);
        for (std::size_t j = 0; j < modes.size(); ++j) {
            const double w = first_order_omega(s.grid.wavenumber(j), p);
            modes[j] *= std::exp(Complex(0.0, -w * dt));
        }
        WaveState out(s.grid, ifft(std::move(modes)));
        out.time = t_final;
        return out;
    }
    COVWAVE_REQUIRE(s.second_order(),
                    "second-order evolution needs the derivative samples");
    std::vector<Complex> u = fft(s.values);
    std::vector<Complex> w = fft(s.derivative);
    for (std::size_t j = 0; j < u.size(); ++j) {
        const BranchRoots r = second_order_roots(eq, s.grid.wavenumber(j), p);
        // Psi_k(t) = A+ e^{-i w+ t} + A- e^{-i w- t};
        // A+ + A- = u and w+ A+ + w- A- = i w.
        const Complex iw = Complex(0.0, 1.0) * w[j];
        const Complex ap = (iw - r.antiparticle * u[j]) / (r.particle - r.antiparticle);
        const Complex am = u[j] - ap;
        const Complex ep = std::exp(Complex(0.0, -r.particle * dt));
        const Complex em = std::exp(Complex(0.0, -r.antiparticle * dt));
        u[j] = ap * ep + am * em;
        w[j] = Complex(0.0, -r.particle) * ap * ep + Complex(0.0, -r.antiparticle) * am * em;
    }
    return WaveState(s.grid, ifft(std::move(u)), ifft(std::move(w)), t_final);
}

} // namespace covwave::lab

#endif // COVWAVE_LAB_EVOLVE_HPP
