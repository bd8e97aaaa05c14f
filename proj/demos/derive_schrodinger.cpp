// SPDX-FileCopyrightText: 2026 covwave contributors
// SPDX-License-Identifier: Apache-2.0

/// @file derive_schrodinger.cpp
/// @brief Minimal tour of the symbolic layer: run the order-2 Galilean
/// derivation chain and print the full text report, then peek at two of
/// the structured fields the report carries.

#include <covwave/pipelines.hpp>

#include <iostream>

int main() {
    using namespace covwave;

    // One call runs the whole chain: isotropic reduction, boost
    // covariance with a generic exponential multiplier, the plane-wave
    // stage that pins the coefficient ratio, and final normalization.
    const DerivationReport rep = derive_galilean(2);

    std::cout << render_text(rep);

    // The same facts are available structurally. For instance the
    // multiplier exponents in physical parameters:
    std::cout << "\nstructured multiplier exponents:\n";
    for (int mu = 0; mu <= 3; ++mu) {
        const Scalar& lam = rep.multiplier.lambda[static_cast<std::size_t>(mu)];
        std::cout << "  lambda_" << mu << " = " << to_string(lam) << "\n";
    }

    // And the final operator slot by slot:
    std::cout << "final operator slots:\n";
    const auto& slots = rep.final_equation.terms();
    for (const auto& [mono, coeff] : slots)
        std::cout << "  " << to_string(mono) << " : " << to_string(coeff) << "\n";
    std::cout << "  potential : " << to_string(rep.final_equation.potential()) << "\n";

    return rep.ok ? 0 : 1;
}
