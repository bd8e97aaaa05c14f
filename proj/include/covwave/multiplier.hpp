// SPDX-FileCopyrightText: 2026 covwave contributors
// SPDX-License-Identifier: Apache-2.0

/// @file multiplier.hpp
/// @brief Exponential-of-linear wave-function multipliers and operator
///        conjugation through them.
///
/// The multiplier family is g(x) = g0 * exp(lam_0 x^0 + ... + lam_3 x^3)
/// with symbolic exponent coefficients, so d_mu g = lam_mu g exactly.
/// Conjugating a constant-coefficient operator through g replaces every
/// d_mu by (d_mu + lam_mu); apply_operator performs that expansion and
/// returns the operator O' with O(g Psi) = g (O' Psi).

#ifndef COVWAVE_MULTIPLIER_HPP
#define COVWAVE_MULTIPLIER_HPP

#include "covwave/linear_pde.hpp"

#include <array>
#include <string>

namespace covwave {

/// g(x) = prefactor * exp(sum_mu lambda[mu] x^mu); prefactor must be nonzero.
struct ExpLinearMultiplier {
    Scalar prefactor = Scalar(1);
    std::array<Scalar, 4> lambda{Scalar(0), Scalar(0), Scalar(0), Scalar(0)};

    /// g identically one.
    static ExpLinearMultiplier identity() { return {}; }

    /// The generic ansatz exp(lam0 x^0 + ... + lam3 x^3) with symbolic
    /// exponent coefficients and unit prefactor.
    static ExpLinearMultiplier generic() {
        ExpLinearMultiplier g;
        for (int mu = 0; mu <= 3; ++mu)
            g.lambda[static_cast<std::size_t>(mu)] = Scalar::variable(sym::lam(mu));
        return g;
    }

    bool is_identity() const {
        if (!prefactor.is_one()) return false;
        for (const Scalar& l : lambda)
            if (!l.is_zero()) return false;
        return true;
    }

    /// Pointwise product g1 * g2: prefactors multiply, exponents add.
    friend ExpLinearMultiplier operator*(const ExpLinearMultiplier& a,
                                         const ExpLinearMultiplier& b) {
        ExpLinearMultiplier out;
        out.prefactor = a.prefactor * b.prefactor;
        if (out.prefactor.is_zero()) throw DomainError("multiplier prefactor must be nonzero");
        for (std::size_t mu = 0; mu < 4; ++mu) out.lambda[mu] = a.lambda[mu] + b.lambda[mu];
        return out;
    }

    /// Applies a symbol substitution to the prefactor and exponents.
    ExpLinearMultiplier substituted(const std::map<Symbol, Scalar, SymbolNameLess>& map) const {
        ExpLinearMultiplier out;
        out.prefactor = prefactor.substitute(map);
        if (out.prefactor.is_zero()) throw DomainError("multiplier prefactor must be nonzero");
        for (std::size_t mu = 0; mu < 4; ++mu) out.lambda[mu] = lambda[mu].substitute(map);
        return out;
    }

    friend bool operator==(const ExpLinearMultiplier&, const ExpLinearMultiplier&) = default;
};

namespace detail {

inline Rational binomial(unsigned int n, unsigned int k) {
    Rational out = 1;
    for (unsigned int j = 0; j < k; ++j) out = out * Rational(n - j) / Rational(j + 1);
    return out;
}

} // namespace detail

/// Conjugation through the multiplier: returns O' with O(g Psi) = g (O' Psi).
/// Every d_mu becomes d_mu + lam_mu, expanded binomially per coordinate; the
/// potential slot commutes with g and passes through unchanged. The constant
/// prefactor cancels between the two sides and never enters.
inline LinearPDE apply_operator(const LinearPDE& op, const ExpLinearMultiplier& g) {
    if (g.prefactor.is_zero()) throw DomainError("multiplier prefactor must be nonzero");
    LinearPDE out;
    out.set_potential(op.potential());
    for (const auto& [m, coeff] : op.terms()) {
        // Expand  prod_mu (d_mu + lam_mu)^alpha_mu  term by term.
        std::map<DerivMono, Scalar, DerivMonoGreater> acc;
        acc.emplace(DerivMono::unit(), coeff);
        for (int mu = 0; mu <= 3; ++mu) {
            unsigned int a = m[mu];
            if (a == 0) continue;
            const Scalar& lam = g.lambda[static_cast<std::size_t>(mu)];
            std::map<DerivMono, Scalar, DerivMonoGreater> next;
            for (const auto& [dm, dc] : acc) {
                for (unsigned int beta = 0; beta <= a; ++beta) {
                    Scalar piece = dc * Scalar(detail::binomial(a, beta)) *
                                   lam.pow(static_cast<int>(a - beta));
                    if (piece.is_zero()) continue;
                    DerivMono key = dm * DerivMono::d(mu, beta);
                    auto [it, inserted] = next.emplace(key, piece);
                    if (!inserted) it->second += piece;
                }
            }
            acc = std::move(next);
        }
        for (const auto& [dm, dc] : acc) out.add_term(dm, dc);
    }
    return out;
}

} // namespace covwave

#endif // COVWAVE_MULTIPLIER_HPP
