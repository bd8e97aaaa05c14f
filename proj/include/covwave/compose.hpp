// SPDX-FileCopyrightText: 2026 covwave contributors
// SPDX-License-Identifier: Apache-2.0
#ifndef COVWAVE_COMPOSE_HPP
#define COVWAVE_COMPOSE_HPP

/// Composition (operator product) of linear differential operators.
///
/// Constant-coefficient operators compose by convolving their term maps:
/// derivative exponents add and coefficients multiply. Coefficients that
/// depend on the x1 coordinate do not commute with d_1; they are pushed
/// through with the general Leibniz rule
///
///   d_1^n (u w) = sum_j C(n, j) (d_1^j u) (d_1^{n-j} w).
///
/// An x1-dependent symbol u differentiates along a marker chain: each
/// d_1 appends one '1' to its name (u -> u1 -> u11 -> ...), so repeated
/// derivatives stay exact and purely symbolic. Symbols outside the
/// declared dependent set are constants.

#include "covwave/linear_pde.hpp"
#include "covwave/multiplier.hpp"

#include <set>
#include <string>
#include <utility>
#include <vector>

namespace covwave {

namespace detail {

    /// True when `s` is one of the dependent symbols or a derivative marker
    /// of one (the base name followed only by '1' characters).
    inline bool depends_on_x1(Symbol s, const std::set<Symbol, SymbolNameLess>& dependent) {
        std::string_view n = s.name();
        for (const Symbol& d : dependent) {
            std::string_view dn = d.name();
            if (n.size() < dn.size() || n.substr(0, dn.size()) != dn) continue;
            if (n.find_first_not_of('1', dn.size()) == std::string_view::npos) return true;
        }
        return false;
    }

    /// The next marker in the derivative chain of `s`.
    inline Symbol x1_marker(Symbol s) { return Symbol::intern(std::string(s.name()) + "1"); }

} // namespace detail

/// d/dx1 of a coefficient: the product rule over each monomial, stepping
/// dependent symbols along their marker chain. The denominator must be
/// x1-independent.
inline Scalar d1_coefficient(const Scalar& c, const std::set<Symbol, SymbolNameLess>& dependent) {
    for (const auto& [mono, coeff] : c.den().terms())
        for (const auto& [s, e] : mono.factors())
            if (detail::depends_on_x1(s, dependent))
                throw DomainError("coefficient has an x1-dependent denominator");
    Polynomial out;
    for (const auto& [mono, coeff] : c.num().terms()) {
        for (const auto& [s, e] : mono.factors()) {
            if (!detail::depends_on_x1(s, dependent)) continue;
            // d(s^e)/dx1 = e s^(e-1) s' times the untouched factors.
            Monomial dm = Monomial::var(detail::x1_marker(s));
            for (const auto& [t, te] : mono.factors())
                dm = dm * Monomial::var(t, t == s ? te - 1 : te);
            out.add_term(dm, coeff * Coeff(Rational(e)));
        }
    }
    return Scalar(out, c.den());
}

/// left o right, the operator applying `right` first. Coefficients in the
/// `x1_dependent` set (with their marker chains) are differentiated by the
/// left factor's d_1 power via Leibniz; all other coefficients commute
/// with every derivative. With an empty set this is the plain
/// constant-coefficient product.
inline LinearPDE compose(const LinearPDE& left, const LinearPDE& right,
                         const std::set<Symbol, SymbolNameLess>& x1_dependent = {}) {
    auto slots = [](const LinearPDE& op) {
        std::vector<std::pair<DerivMono, Scalar>> t(op.terms().begin(), op.terms().end());
        if (!op.potential().is_zero()) t.emplace_back(DerivMono::unit(), op.potential());
        return t;
    };
    LinearPDE out;
    for (const auto& [lm, lc] : slots(left)) {
        for (const auto& [rm, rc] : slots(right)) {
            const unsigned int n = lm[1];
            Scalar dcoeff = rc; // d_1^j of the right coefficient
            for (unsigned int j = 0; j <= n; ++j) {
                if (!dcoeff.is_zero()) {
                    Scalar piece = lc * Scalar(Coeff(detail::binomial(n, j))) * dcoeff;
                    DerivMono mono({lm[0] + rm[0], (n - j) + rm[1], lm[2] + rm[2], lm[3] + rm[3]});
                    if (mono.is_zeroth())
                        out.set_potential(out.potential() + piece);
                    else
                        out.add_term(mono, piece);
                }
                if (j < n) dcoeff = d1_coefficient(dcoeff, x1_dependent);
            }
        }
    }
    return out;
}

} // namespace covwave

#endif // COVWAVE_COMPOSE_HPP
