// SPDX-FileCopyrightText: 2026 covwave contributors
// SPDX-License-Identifier: Apache-2.0

/// @file derivative.hpp
/// @brief Commuting derivative monomials over the four coordinates.
///
/// A DerivMono is a multi-index (a0, a1, a2, a3) standing for the product
/// of partial derivatives d0^a0 d1^a1 d2^a2 d3^a3. Partials commute, so
/// the multi-index representation is canonical. Index 0 is the time-like
/// coordinate; 1..3 are spatial. Total order is capped at four, the
/// highest order any pipeline produces (a squared second-order operator).

#ifndef COVWAVE_DERIVATIVE_HPP
#define COVWAVE_DERIVATIVE_HPP

#include "covwave/numeric.hpp"

#include <array>
#include <string>

namespace covwave {

/// Highest derivative order the library represents.
inline constexpr unsigned int max_derivative_order = 4;

/// Multi-index of commuting partial derivatives.
struct DerivMono {
    std::array<unsigned int, 4> alpha{0, 0, 0, 0};

    DerivMono() = default;
    explicit DerivMono(std::array<unsigned int, 4> a) : alpha(a) { check(); }

    /// Single partial d_mu to the given power.
    static DerivMono d(int mu, unsigned int e = 1) {
        COVWAVE_REQUIRE(mu >= 0 && mu <= 3, "derivative index out of range");
        DerivMono m;
        m.alpha[static_cast<std::size_t>(mu)] = e;
        m.check();
        return m;
    }

    static DerivMono unit() { return DerivMono(); }

    unsigned int order() const { return alpha[0] + alpha[1] + alpha[2] + alpha[3]; }
    bool is_zeroth() const { return order() == 0; }

    unsigned int operator[](int mu) const { return alpha[static_cast<std::size_t>(mu)]; }

    friend bool operator==(const DerivMono&, const DerivMono&) = default;

    friend DerivMono operator*(const DerivMono& x, const DerivMono& y) {
        DerivMono out;
        for (std::size_t mu = 0; mu < 4; ++mu) out.alpha[mu] = x.alpha[mu] + y.alpha[mu];
        out.check();
        return out;
    }

    /// Graded comparison, ties broken lexicographically on (a0, a1, a2, a3);
    /// returns -1, 0 or +1 as x <, ==, > y. Higher order and more weight on
    /// lower indices rank greater, which is the natural presentation order
    /// (time derivatives first).
    static int compare(const DerivMono& x, const DerivMono& y) {
        unsigned int ox = x.order();
        unsigned int oy = y.order();
        if (ox != oy) return ox < oy ? -1 : 1;
        for (std::size_t mu = 0; mu < 4; ++mu)
            if (x.alpha[mu] != y.alpha[mu]) return x.alpha[mu] > y.alpha[mu] ? 1 : -1;
        return 0;
    }

    /// Compact digit form, e.g. (1,1,0,0) -> "1100"; used in equation labels.
    std::string digits() const {
        std::string out;
        for (unsigned int a : alpha) out += static_cast<char>('0' + a);
        return out;
    }

  private:
    void check() const {
        if (order() > max_derivative_order)
            throw DomainError("derivative order above " + std::to_string(max_derivative_order));
    }
};

/// Terms are displayed and stored greatest-first.
struct DerivMonoGreater {
    bool operator()(const DerivMono& a, const DerivMono& b) const {
        return DerivMono::compare(a, b) > 0;
    }
};

/// Renders as "*"-joined powers of d0..d3, or "1" for the empty product.
inline std::string to_string(const DerivMono& m) {
    if (m.is_zeroth()) return "1";
    std::string out;
    for (int mu = 0; mu <= 3; ++mu) {
        unsigned int e = m[mu];
        if (e == 0) continue;
        if (!out.empty()) out += "*";
        out += "d" + std::to_string(mu);
        if (e > 1) out += "^" + std::to_string(e);
    }
    return out;
}

} // namespace covwave

#endif // COVWAVE_DERIVATIVE_HPP
