// SPDX-FileCopyrightText: 2026 covwave contributors
// SPDX-License-Identifier: Apache-2.0
#ifndef COVWAVE_DISPERSION_HPP
#define COVWAVE_DISPERSION_HPP

/// Plane-wave dispersion analysis for constant-coefficient operators.
///
/// A trial wave Psi = Psi0 exp(i (k x1 - w t)) turns each derivative slot
/// of a LinearPDE into a number: every d_t contributes a factor -i w and
/// every d_1 a factor i k, while slots with transverse derivatives drop
/// out (the transverse wave vector is zero). The operator collapses to
/// its characteristic scalar chi(w, k). Demanding chi = 0 on a dispersion
/// shell w(k), identically in k, yields exact conditions on the operator
/// coefficients, which are handed to the staged constraint solver with k
/// as a universal symbol (matching powers of k).
///
/// Shells that fix w^2 rather than w keep both frequency branches: after
/// rewriting even powers of w through the shell, the odd-in-w and
/// even-in-w parts of chi must vanish separately, because the branches
/// differ only in the sign of w.

#include "covwave/linear_pde.hpp"
#include "covwave/solve.hpp"

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace covwave {

/// A dispersion law: w = rhs(k), or w^2 = rhs(k) when `quadratic`.
struct DispersionTarget {
    std::string name;
    Scalar rhs;
    bool quadratic = false; ///< the law fixes w^2 instead of w
    bool x0_is_ct = false;  ///< the operator's x0 is c t, so d_0 = (1/c) d_t
};

/// w = hbar k^2 / (2 m): a free massive particle.
inline DispersionTarget free_particle_target() {
    Scalar rhs = Scalar::variable(sym::hbar()) * Scalar::variable(sym::k()).pow(2) /
                 (Scalar(2) * Scalar::variable(sym::m()));
    return {"free particle", rhs, false, false};
}

/// w = hbar k^2 / (2 m) + V / hbar: a massive particle over a constant
/// potential floor.
inline DispersionTarget potential_particle_target() {
    Scalar rhs = free_particle_target().rhs +
                 Scalar::variable(sym::V()) / Scalar::variable(sym::hbar());
    return {"particle over a potential", rhs, false, false};
}

/// w^2 = (m^2 c^4 + c^2 hbar^2 k^2) / hbar^2: the relativistic
/// energy-momentum relation in frequency form, both branches.
inline DispersionTarget relativistic_target() {
    Scalar m2 = Scalar::variable(sym::m()).pow(2);
    Scalar c2 = Scalar::variable(sym::c()).pow(2);
    Scalar h2 = Scalar::variable(sym::hbar()).pow(2);
    Scalar k2 = Scalar::variable(sym::k()).pow(2);
    return {"relativistic particle", m2 * c2 * c2 / h2 + c2 * k2, true, true};
}

/// chi(w, k): the operator applied to the plane wave, divided by the wave.
inline Scalar characteristic(const LinearPDE& op, bool x0_is_ct) {
    Scalar d0 = Scalar(-Coeff::i()) * Scalar::variable(sym::w());
    if (x0_is_ct) d0 = d0 / Scalar::variable(sym::c());
    const Scalar d1 = Scalar(Coeff::i()) * Scalar::variable(sym::k());
    Scalar chi = op.potential();
    for (const auto& [mono, coeff] : op.terms()) {
        if (mono[2] > 0 || mono[3] > 0) continue; // transverse slots drop
        chi += coeff * d0.pow(static_cast<int>(mono[0])) * d1.pow(static_cast<int>(mono[1]));
    }
    return chi;
}

struct DispersionOptions {
    /// Coefficient symbols to solve for, in priority order.
    std::vector<Symbol> eliminate;
    /// Symbols that may be divided by (physical parameters, known-nonzero
    /// coefficients).
    std::set<Symbol, SymbolNameLess> assumed_nonzero;
    /// Coefficient conventions applied before solving.
    std::map<Symbol, Scalar, SymbolNameLess> prebound;
    /// When set to (num, den), the solved ratio num/den is reported. A
    /// nonzero ratio that is not pure imaginary (an imaginary number times
    /// a real symbol expression) rejects the match: such an operator damps
    /// or pumps every mode instead of propagating it.
    std::optional<std::pair<Symbol, Symbol>> ratio;
};

struct DispersionMatch {
    bool satisfiable = true;
    std::string failure;
    std::map<Symbol, Scalar, SymbolNameLess> bindings;
    std::optional<Scalar> ratio;
    bool ratio_pure_imaginary = false;
    SolveResult detail;
};

namespace detail {

    /// True when every coefficient of p lies in Q(sqrt2): no imaginary part.
    inline bool real_coefficients(const Polynomial& p) {
        for (const auto& [mono, coeff] : p.terms())
            if (!(coeff.im_r == 0) || !(coeff.im_s == 0)) return false;
        return true;
    }

} // namespace detail

/// Imposes the dispersion law on the operator's plane-wave characteristic
/// and solves for the requested coefficients. Unsatisfiable when no
/// assignment removes the k-dependence of the mismatch.
inline DispersionMatch dispersion_match(const LinearPDE& op, const DispersionTarget& target,
                                        const DispersionOptions& opt) {
    const Scalar chi = characteristic(op, target.x0_is_ct);
    ConstraintSystem cs;
    if (!target.quadratic) {
        cs.append(chi.substitute(sym::w(), target.rhs), "characteristic on the " + target.name +
                                                            " shell");
    } else {
        auto [reduced, power] = Scalar::reduce_even_powers(chi.num(), sym::w(), target.rhs.num(),
                                                           target.rhs.den());
        (void)power; // the dropped denominator power is nonzero
        std::vector<Polynomial> parts = reduced.coefficients_in(sym::w());
        cs.append(Scalar(parts[0]), "characteristic on the " + target.name +
                                        " shell, branch-even part");
        if (parts.size() > 1)
            cs.append(Scalar(parts[1]), "characteristic on the " + target.name +
                                            " shell, branch-odd part");
    }

    SolverOptions sopt;
    sopt.assumed_nonzero = opt.assumed_nonzero;
    sopt.universals.insert(sym::k());
    sopt.eliminate = opt.eliminate;
    sopt.prebound = opt.prebound;

    DispersionMatch out;
    out.detail = solve_constraints(cs, sopt);
    out.satisfiable = out.detail.satisfiable;
    if (!out.satisfiable)
        out.failure = out.detail.failure.empty()
                          ? "no coefficient assignment removes the k-dependence"
                          : out.detail.failure;
    out.bindings = out.detail.bindings;

    if (opt.ratio) {
        auto value_of = [&](Symbol s) -> Scalar {
            auto it = out.bindings.find(s);
            return it != out.bindings.end() ? it->second : Scalar::variable(s);
        };
        const Scalar den = value_of(opt.ratio->second);
        if (den.is_zero()) {
            out.satisfiable = false;
            out.failure = "ratio denominator " + opt.ratio->second.name() + " vanishes";
            return out;
        }
        const Scalar r = value_of(opt.ratio->first) / den;
        out.ratio = r;
        if (!r.is_zero()) {
            const Scalar probe = r * Scalar(-Coeff::i());
            out.ratio_pure_imaginary = detail::real_coefficients(probe.num()) &&
                                       detail::real_coefficients(probe.den());
            if (out.satisfiable && !out.ratio_pure_imaginary) {
                out.satisfiable = false;
                out.failure = "time-to-space coefficient ratio " + to_string(r) +
                              " is not pure imaginary";
            }
        }
    }
    return out;
}

} // namespace covwave

#endif // COVWAVE_DISPERSION_HPP
