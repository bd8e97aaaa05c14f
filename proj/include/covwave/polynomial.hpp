// SPDX-FileCopyrightText: 2026 covwave contributors
// SPDX-License-Identifier: Apache-2.0

/// @file polynomial.hpp
/// @brief Exact multivariate polynomials over Q(i, sqrt2).
///
/// Terms are stored in descending graded-lex order, so begin() is the
/// leading term. Beyond ring arithmetic the class provides the pieces the
/// fraction field needs: exact multivariate division, pseudo-remainders,
/// and a primitive polynomial-remainder-sequence gcd that recurses on the
/// alphabetically first symbol present.

#ifndef COVWAVE_POLYNOMIAL_HPP
#define COVWAVE_POLYNOMIAL_HPP

#include "covwave/coeff.hpp"
#include "covwave/monomial.hpp"

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace covwave {

/// Sparse polynomial: Monomial -> nonzero Coeff, leading term first.
class Polynomial {
  public:
    using TermMap = std::map<Monomial, Coeff, MonomialGreater>;

    Polynomial() = default;
    Polynomial(int n) { add_term(Monomial::unit(), Coeff(n)); }        // NOLINT
    Polynomial(const Coeff& c) { add_term(Monomial::unit(), c); }      // NOLINT

    static Polynomial zero() { return Polynomial(); }
    static Polynomial one() { return Polynomial(1); }
    static Polynomial constant(const Coeff& c) { return Polynomial(c); }
    static Polynomial variable(Symbol s) {
        Polynomial p;
        p.add_term(Monomial::var(s), Coeff::one());
        return p;
    }
    static Polynomial term(const Monomial& m, const Coeff& c) {
        Polynomial p;
        p.add_term(m, c);
        return p;
    }

    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const {
        return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_unit());
    }
    /// The constant viewed as a Coeff; requires is_constant().
    Coeff constant_value() const {
        if (terms_.empty()) return Coeff::zero();
        COVWAVE_REQUIRE(is_constant(), "constant_value on a non-constant polynomial");
        return terms_.begin()->second;
    }

    std::size_t term_count() const { return terms_.size(); }

    const Monomial& leading_monomial() const {
        COVWAVE_REQUIRE(!terms_.empty(), "leading term of the zero polynomial");
        return terms_.begin()->first;
    }
    const Coeff& leading_coeff() const {
        COVWAVE_REQUIRE(!terms_.empty(), "leading term of the zero polynomial");
        return terms_.begin()->second;
    }

    unsigned int total_degree() const {
        return terms_.empty() ? 0 : terms_.begin()->first.total_degree();
    }

    unsigned int degree_in(Symbol s) const {
        unsigned int d = 0;
        for (const auto& [m, c] : terms_) d = std::max(d, m.degree_in(s));
        return d;
    }

    bool contains(Symbol s) const {
        for (const auto& [m, c] : terms_)
            if (m.contains(s)) return true;
        return false;
    }

    std::set<Symbol, SymbolNameLess> symbols() const {
        std::set<Symbol, SymbolNameLess> out;
        for (const auto& [m, c] : terms_)
            for (const auto& [s, e] : m.factors()) out.insert(s);
        return out;
    }

    void add_term(const Monomial& m, const Coeff& c) {
        if (c.is_zero()) return;
        auto [it, inserted] = terms_.emplace(m, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    friend bool operator==(const Polynomial&, const Polynomial&) = default;

    Polynomial operator-() const {
        Polynomial out;
        for (const auto& [m, c] : terms_) out.terms_.emplace(m, -c);
        return out;
    }

    friend Polynomial operator+(const Polynomial& x, const Polynomial& y) {
        Polynomial out = x;
        for (const auto& [m, c] : y.terms_) out.add_term(m, c);
        return out;
    }
    friend Polynomial operator-(const Polynomial& x, const Polynomial& y) { return x + (-y); }

    friend Polynomial operator*(const Polynomial& x, const Polynomial& y) {
        Polynomial out;
        for (const auto& [mx, cx] : x.terms_)
            for (const auto& [my, cy] : y.terms_) out.add_term(mx * my, cx * cy);
        return out;
    }

    Polynomial& operator+=(const Polynomial& y) { return *this = *this + y; }
    Polynomial& operator-=(const Polynomial& y) { return *this = *this - y; }
    Polynomial& operator*=(const Polynomial& y) { return *this = *this * y; }

    friend Polynomial operator*(const Polynomial& x, const Coeff& c) {
        Polynomial out;
        if (c.is_zero()) return out;
        for (const auto& [m, k] : x.terms_) out.terms_.emplace(m, k * c);
        return out;
    }
    friend Polynomial operator*(const Coeff& c, const Polynomial& x) { return x * c; }

    Polynomial pow(unsigned int e) const {
        Polynomial out = one();
        Polynomial base = *this;
        while (e > 0) {
            if (e & 1u) out *= base;
            base *= base;
            e >>= 1u;
        }
        return out;
    }

    /// Exact quotient, or nullopt when den does not divide num. The zero
    /// divisor is rejected. Runs the leading-term division loop, which for
    /// true multiples always terminates with remainder zero.
    static std::optional<Polynomial> divide(const Polynomial& num, const Polynomial& den) {
        if (den.is_zero()) throw DomainError("polynomial division by zero");
        Polynomial q;
        Polynomial r = num;
        while (!r.is_zero()) {
            auto mq = Monomial::divide(r.leading_monomial(), den.leading_monomial());
            if (!mq) return std::nullopt;
            Coeff cq = r.leading_coeff() / den.leading_coeff();
            Polynomial t = term(*mq, cq);
            q += t;
            r -= t * den;
        }
        return q;
    }

    /// Exact quotient that must succeed; throws InternalError otherwise.
    static Polynomial divide_exact(const Polynomial& num, const Polynomial& den) {
        auto q = divide(num, den);
        COVWAVE_REQUIRE(q.has_value(), "expected exact polynomial division");
        return *q;
    }

    /// Coefficients of powers of s: index j holds the coefficient of s^j.
    std::vector<Polynomial> coefficients_in(Symbol s) const {
        std::vector<Polynomial> out(degree_in(s) + 1);
        for (const auto& [m, c] : terms_) {
            unsigned int e = m.degree_in(s);
            Monomial rest = *Monomial::divide(m, Monomial::var(s, e));
            out[e].add_term(rest, c);
        }
        return out;
    }

    /// Leading coefficient with respect to one symbol (a polynomial).
    Polynomial leading_coeff_in(Symbol s) const {
        auto cs = coefficients_in(s);
        return cs.back();
    }

    /// Pseudo-remainder of num by den with respect to s: repeatedly scales
    /// by den's leading coefficient in s so every cancellation is exact.
    static Polynomial prem(Polynomial num, const Polynomial& den, Symbol s) {
        COVWAVE_REQUIRE(!den.is_zero(), "pseudo-remainder by zero");
        unsigned int db = den.degree_in(s);
        Polynomial lcb = den.leading_coeff_in(s);
        while (!num.is_zero() && num.degree_in(s) >= db && db > 0) {
            unsigned int da = num.degree_in(s);
            Polynomial lca = num.leading_coeff_in(s);
            Polynomial shift = Polynomial::term(Monomial::var(s, da - db), Coeff::one());
            num = lcb * num - lca * shift * den;
        }
        return num;
    }

    /// Content with respect to s: gcd of the coefficient polynomials.
    Polynomial content_in(Symbol s) const {
        Polynomial g;
        for (const Polynomial& c : coefficients_in(s)) g = gcd(g, c);
        return g;
    }

    Polynomial primitive_part_in(Symbol s) const {
        if (is_zero()) return *this;
        return divide_exact(*this, content_in(s));
    }

    /// Multivariate gcd via the primitive polynomial remainder sequence,
    /// recursing on the alphabetically first symbol of either argument.
    /// The result is normalized to leading coefficient one, so it is the
    /// unique monic representative.
    static Polynomial gcd(const Polynomial& a, const Polynomial& b) {
        if (a.is_zero()) return make_monic(b);
        if (b.is_zero()) return make_monic(a);
        if (a.is_constant() || b.is_constant()) return one();
        Symbol s = first_symbol(a, b);
        if (a.degree_in(s) == 0) return gcd(a, b.content_in(s));
        if (b.degree_in(s) == 0) return gcd(a.content_in(s), b);

        Polynomial cont = gcd(a.content_in(s), b.content_in(s));
        Polynomial u = a.primitive_part_in(s);
        Polynomial v = b.primitive_part_in(s);
        if (u.degree_in(s) < v.degree_in(s)) std::swap(u, v);
        Polynomial part = one();
        while (true) {
            Polynomial r = prem(u, v, s);
            if (r.is_zero()) {
                part = v.primitive_part_in(s);
                break;
            }
            if (r.degree_in(s) == 0) break; // coprime in s
            u = v;
            v = r.primitive_part_in(s);
        }
        return make_monic(cont * part);
    }

    /// Divides by the leading coefficient so the leading term is monic.
    static Polynomial make_monic(const Polynomial& p) {
        if (p.is_zero()) return p;
        return p * p.leading_coeff().inverse();
    }

    /// Positive rational gcd over all coefficient components (0 for zero).
    Rational numeric_content() const {
        Rational g = 0;
        for (const auto& [m, c] : terms_) g = rational_gcd(g, c.numeric_content());
        return g;
    }

    /// Componentwise-minimum monomial over all terms (unit for zero).
    Monomial monomial_content() const {
        Monomial g;
        bool first = true;
        for (const auto& [m, c] : terms_) {
            g = first ? m : Monomial::gcd(g, m);
            first = false;
        }
        return g;
    }

    /// Simultaneous substitution of symbols by polynomials; symbols absent
    /// from the map pass through unchanged.
    Polynomial substitute(const std::map<Symbol, Polynomial, SymbolNameLess>& map) const {
        Polynomial out;
        for (const auto& [m, c] : terms_) {
            Polynomial t = constant(c);
            for (const auto& [s, e] : m.factors()) {
                auto it = map.find(s);
                Polynomial base = (it != map.end()) ? it->second : variable(s);
                t *= base.pow(e);
            }
            out += t;
        }
        return out;
    }

    /// Full numeric evaluation; every symbol present must be bound.
    Coeff evaluate(const std::map<Symbol, Coeff, SymbolNameLess>& values) const {
        Coeff out = Coeff::zero();
        for (const auto& [m, c] : terms_) {
            Coeff t = c;
            for (const auto& [s, e] : m.factors()) {
                auto it = values.find(s);
                if (it == values.end())
                    throw DomainError("evaluate: unbound symbol '" + s.name() + "'");
                t *= covwave::pow(it->second, e);
            }
            out += t;
        }
        return out;
    }

  private:
    static Symbol first_symbol(const Polynomial& a, const Polynomial& b) {
        Symbol best;
        for (const Polynomial* p : {&a, &b})
            for (const auto& [m, c] : p->terms())
                for (const auto& [s, e] : m.factors())
                    if (!best.valid() || compare_name(s, best) < 0) best = s;
        COVWAVE_REQUIRE(best.valid(), "no symbol present");
        return best;
    }

    TermMap terms_;
};

/// Renders terms in descending order, e.g. "hbar^2*m - 1/2*v^2 + 3".
/// Multi-atom coefficients are parenthesized so output re-parses uniquely.
inline std::string to_string(const Polynomial& p) {
    if (p.is_zero()) return "0";
    std::string out;
    for (const auto& [m, c] : p.terms()) {
        Coeff a = c;
        bool negative = a.canonical_sign() < 0;
        if (negative) a = -a;
        std::string piece;
        if (m.is_unit())
            piece = (atom_count(a) > 1 ? "(" + to_string(a) + ")" : to_string(a));
        else if (a.is_one())
            piece = to_string(m);
        else if (atom_count(a) > 1)
            piece = "(" + to_string(a) + ")*" + to_string(m);
        else
            piece = to_string(a) + "*" + to_string(m);
        if (out.empty())
            out = (negative ? "-" : "") + piece;
        else
            out += (negative ? " - " : " + ") + piece;
    }
    return out;
}

} // namespace covwave

#endif // COVWAVE_POLYNOMIAL_HPP
