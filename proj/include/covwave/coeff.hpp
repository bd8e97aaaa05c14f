// SPDX-FileCopyrightText: 2026 covwave contributors
// SPDX-License-Identifier: Apache-2.0

/// @file coeff.hpp
/// @brief The exact coefficient field Q(i, sqrt(2)).
///
/// Every polynomial coefficient in the library is an element
///     a + b*i + (c + d*i)*sqrt(2)         with a, b, c, d rational.
/// This is the smallest field containing all constants the derivations
/// need: i enters through the complex multiplier exponents and sqrt(2)
/// through the quarter-turn (pi/4) rotation matrices. The representation
/// is unique, so equality is componentwise.

#ifndef COVWAVE_COEFF_HPP
#define COVWAVE_COEFF_HPP

#include "covwave/numeric.hpp"

#include <string>
#include <vector>

namespace covwave {

/// Element of Q(i, sqrt2): re_r + im_r*i + (re_s + im_s*i)*sqrt2.
struct Coeff {
    Rational re_r{0}; ///< rational part
    Rational im_r{0}; ///< coefficient of i
    Rational re_s{0}; ///< coefficient of sqrt2
    Rational im_s{0}; ///< coefficient of i*sqrt2

    Coeff() = default;
    Coeff(int n) : re_r(n) {}                       // NOLINT(google-explicit-constructor)
    Coeff(Rational r) : re_r(std::move(r)) {}       // NOLINT(google-explicit-constructor)
    Coeff(Rational a, Rational b, Rational c, Rational d)
        : re_r(std::move(a)), im_r(std::move(b)), re_s(std::move(c)), im_s(std::move(d)) {}

    static Coeff zero() { return Coeff(); }
    static Coeff one() { return Coeff(1); }
    static Coeff i() { return Coeff(Rational(0), Rational(1), Rational(0), Rational(0)); }
    static Coeff sqrt2() { return Coeff(Rational(0), Rational(0), Rational(1), Rational(0)); }

    bool is_zero() const { return re_r == 0 && im_r == 0 && re_s == 0 && im_s == 0; }
    bool is_one() const { return re_r == 1 && im_r == 0 && re_s == 0 && im_s == 0; }

    /// True when the element lies in Q (no i, no sqrt2 part).
    bool is_rational() const { return im_r == 0 && re_s == 0 && im_s == 0; }

    /// True when the element is purely imaginary (possibly with a sqrt2 part).
    bool is_pure_imaginary() const { return re_r == 0 && re_s == 0; }

    friend bool operator==(const Coeff&, const Coeff&) = default;

    Coeff operator-() const { return {-re_r, -im_r, -re_s, -im_s}; }

    friend Coeff operator+(const Coeff& x, const Coeff& y) {
        return {x.re_r + y.re_r, x.im_r + y.im_r, x.re_s + y.re_s, x.im_s + y.im_s};
    }
    friend Coeff operator-(const Coeff& x, const Coeff& y) { return x + (-y); }

    friend Coeff operator*(const Coeff& x, const Coeff& y) {
        // Write x = z1 + w1*sqrt2, y = z2 + w2*sqrt2 with z, w Gaussian rationals:
        // x*y = (z1*z2 + 2*w1*w2) + (z1*w2 + w1*z2)*sqrt2.
        auto zmul_re = [](const Rational& ar, const Rational& ai, const Rational& br,
                          const Rational& bi) { return ar * br - ai * bi; };
        auto zmul_im = [](const Rational& ar, const Rational& ai, const Rational& br,
                          const Rational& bi) { return ar * bi + ai * br; };
        Coeff out;
        out.re_r = zmul_re(x.re_r, x.im_r, y.re_r, y.im_r)
                 + 2 * zmul_re(x.re_s, x.im_s, y.re_s, y.im_s);
        out.im_r = zmul_im(x.re_r, x.im_r, y.re_r, y.im_r)
                 + 2 * zmul_im(x.re_s, x.im_s, y.re_s, y.im_s);
        out.re_s = zmul_re(x.re_r, x.im_r, y.re_s, y.im_s)
                 + zmul_re(x.re_s, x.im_s, y.re_r, y.im_r);
        out.im_s = zmul_im(x.re_r, x.im_r, y.re_s, y.im_s)
                 + zmul_im(x.re_s, x.im_s, y.re_r, y.im_r);
        return out;
    }

    /// Exact multiplicative inverse. Conjugate first over sqrt2, then over i.
    Coeff inverse() const {
        if (is_zero()) throw DomainError("division by zero in Q(i,sqrt2)");
        // x = z + w*sqrt2; x * (z - w*sqrt2) = z^2 - 2 w^2  (a Gaussian rational).
        Coeff conj_s{re_r, im_r, -re_s, -im_s};
        Coeff gr = *this * conj_s; // gr.re_s == gr.im_s == 0 by construction
        COVWAVE_REQUIRE(gr.re_s == 0 && gr.im_s == 0, "sqrt2 conjugation must clear sqrt2");
        // Gaussian inverse: (p + q i)^-1 = (p - q i)/(p^2 + q^2).
        Rational norm = gr.re_r * gr.re_r + gr.im_r * gr.im_r;
        COVWAVE_REQUIRE(norm != 0, "nonzero element has nonzero Gaussian norm");
        Coeff gi{gr.re_r / norm, -gr.im_r / norm, Rational(0), Rational(0)};
        return conj_s * gi;
    }

    friend Coeff operator/(const Coeff& x, const Coeff& y) { return x * y.inverse(); }

    Coeff& operator+=(const Coeff& y) { return *this = *this + y; }
    Coeff& operator-=(const Coeff& y) { return *this = *this - y; }
    Coeff& operator*=(const Coeff& y) { return *this = *this * y; }
    Coeff& operator/=(const Coeff& y) { return *this = *this / y; }

    /// Sign convention used for deterministic normalization: the sign of the
    /// first nonzero component in the order (re_r, im_r, re_s, im_s);
    /// 0 for the zero element.
    int canonical_sign() const {
        for (const Rational* r : {&re_r, &im_r, &re_s, &im_s}) {
            if (*r > 0) return 1;
            if (*r < 0) return -1;
        }
        return 0;
    }

    /// Positive rational content: gcd of the nonzero components.
    Rational numeric_content() const {
        Rational g = 0;
        for (const Rational* r : {&re_r, &im_r, &re_s, &im_s}) g = rational_gcd(g, *r);
        return g;
    }
};

inline Coeff pow(Coeff base, unsigned int e) {
    Coeff out = Coeff::one();
    while (e > 0) {
        if (e & 1u) out *= base;
        base *= base;
        e >>= 1u;
    }
    return out;
}

/// Renders in a stable, re-parseable form, e.g. "1/2", "-i", "3*r2 + i",
/// "2 - i*r2". Atoms appear in the fixed order 1, i, r2, i*r2.
inline std::string to_string(const Coeff& c) {
    if (c.is_zero()) return "0";
    struct Atom {
        const Rational* mag;
        const char* sym;
    };
    const Atom atoms[] = {{&c.re_r, ""}, {&c.im_r, "i"}, {&c.re_s, "r2"}, {&c.im_s, "i*r2"}};
    std::string out;
    for (const auto& [mag, sym] : atoms) {
        if (*mag == 0) continue;
        Rational a = abs(*mag);
        std::string piece;
        if (a == 1 && sym[0] != '\0')
            piece = sym;
        else {
            piece = to_string(a);
            if (sym[0] != '\0') piece += std::string("*") + sym;
        }
        if (out.empty())
            out = (*mag < 0 ? "-" : "") + piece;
        else
            out += (*mag < 0 ? " - " : " + ") + piece;
    }
    return out;
}

/// Number of nonzero atoms; printers parenthesize multi-atom coefficients.
inline int atom_count(const Coeff& c) {
    int n = 0;
    for (const Rational* r : {&c.re_r, &c.im_r, &c.re_s, &c.im_s})
        if (*r != 0) ++n;
    return n;
}

} // namespace covwave

#endif // COVWAVE_COEFF_HPP
