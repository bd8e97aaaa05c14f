// SPDX-FileCopyrightText: 2026 covwave contributors
// SPDX-License-Identifier: Apache-2.0

/// @file scalar.hpp
/// @brief Exact rational expressions (polynomial fractions) with support
///        for quadratic symbols such as the boost factor.
///
/// A Scalar is a reduced fraction num/den of polynomials over Q(i, sqrt2).
/// Canonical form: the fraction is reduced by the multivariate gcd, the
/// denominator is monic under the global term order, and every registered
/// quadratic symbol s with a rule s^2 = N/D appears to degree at most one
/// in the numerator and not at all in the denominator (denominators are
/// rationalized with the s-conjugate). One rule ships by default: the
/// boost factor "gamma" with gamma^2 = 1/(1 - beta^2). Because {1, s} is
/// a basis over the s-free subfield, the canonical form is unique and
/// equality is structural.

#ifndef COVWAVE_SCALAR_HPP
#define COVWAVE_SCALAR_HPP

#include "covwave/polynomial.hpp"

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace covwave {

/// Rewrite rule s^2 = square_num / square_den (both s-free).
struct QuadraticRule {
    Polynomial square_num;
    Polynomial square_den;
};

/// Reduced polynomial fraction over Q(i, sqrt2).
class Scalar {
  public:
    Scalar() : num_(), den_(Polynomial::one()) {}
    Scalar(int n) : num_(n), den_(Polynomial::one()) {}                    // NOLINT
    Scalar(const Rational& r) : num_(Coeff(r)), den_(Polynomial::one()) {} // NOLINT
    Scalar(const Coeff& c) : num_(c), den_(Polynomial::one()) {}           // NOLINT
    Scalar(Polynomial p) : num_(std::move(p)), den_(Polynomial::one()) {   // NOLINT
        canonicalize();
    }
    Scalar(Polynomial num, Polynomial den) : num_(std::move(num)), den_(std::move(den)) {
        canonicalize();
    }

    static Scalar variable(Symbol s) { return Scalar(Polynomial::variable(s)); }

    const Polynomial& num() const { return num_; }
    const Polynomial& den() const { return den_; }

    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const { return num_ == Polynomial::one() && den_ == Polynomial::one(); }
    bool is_constant() const { return num_.is_constant() && den_ == Polynomial::one(); }
    Coeff constant_value() const {
        COVWAVE_REQUIRE(is_constant(), "constant_value on a non-constant scalar");
        return num_.constant_value();
    }

    bool contains(Symbol s) const { return num_.contains(s) || den_.contains(s); }

    std::set<Symbol, SymbolNameLess> symbols() const {
        auto out = num_.symbols();
        auto ds = den_.symbols();
        out.insert(ds.begin(), ds.end());
        return out;
    }

    friend bool operator==(const Scalar&, const Scalar&) = default;

    Scalar operator-() const { return raw(-num_, den_); }

    friend Scalar operator+(const Scalar& x, const Scalar& y) {
        return Scalar(x.num_ * y.den_ + y.num_ * x.den_, x.den_ * y.den_);
    }
    friend Scalar operator-(const Scalar& x, const Scalar& y) { return x + (-y); }
    friend Scalar operator*(const Scalar& x, const Scalar& y) {
        return Scalar(x.num_ * y.num_, x.den_ * y.den_);
    }
    friend Scalar operator/(const Scalar& x, const Scalar& y) {
        if (y.is_zero()) throw DomainError("scalar division by zero");
        return Scalar(x.num_ * y.den_, x.den_ * y.num_);
    }

    Scalar& operator+=(const Scalar& y) { return *this = *this + y; }
    Scalar& operator-=(const Scalar& y) { return *this = *this - y; }
    Scalar& operator*=(const Scalar& y) { return *this = *this * y; }
    Scalar& operator/=(const Scalar& y) { return *this = *this / y; }

    Scalar inverse() const {
        if (is_zero()) throw DomainError("scalar inverse of zero");
        return Scalar(den_, num_);
    }

    Scalar pow(int e) const {
        if (e < 0) return inverse().pow(-e);
        Scalar out = 1;
        Scalar base = *this;
        auto u = static_cast<unsigned int>(e);
        while (u > 0) {
            if (u & 1u) out *= base;
            base *= base;
            u >>= 1u;
        }
        return out;
    }

    /// Simultaneous substitution of symbols by scalars.
    Scalar substitute(const std::map<Symbol, Scalar, SymbolNameLess>& map) const {
        return substitute_poly(num_, map) / substitute_poly(den_, map);
    }
    Scalar substitute(Symbol s, const Scalar& value) const {
        std::map<Symbol, Scalar, SymbolNameLess> m;
        m.emplace(s, value);
        return substitute(m);
    }

    /// Exact numeric evaluation; every symbol present must be bound and the
    /// denominator must not vanish at the point.
    Coeff evaluate(const std::map<Symbol, Coeff, SymbolNameLess>& values) const {
        Coeff d = den_.evaluate(values);
        if (d.is_zero()) throw DomainError("evaluate: denominator vanishes at the point");
        return num_.evaluate(values) / d;
    }

    /// Registered quadratic rewrite rules (symbol -> s^2 = N/D). The boost
    /// factor rule is installed on first use and the table never shrinks,
    /// so canonical forms stay consistent for the whole process.
    static const std::map<Symbol, QuadraticRule, SymbolNameLess>& quadratic_rules() {
        static const std::map<Symbol, QuadraticRule, SymbolNameLess> rules = [] {
            std::map<Symbol, QuadraticRule, SymbolNameLess> r;
            Polynomial beta = Polynomial::variable(sym::beta());
            r.emplace(sym::gamma(),
                      QuadraticRule{Polynomial::one(), Polynomial::one() - beta * beta});
            return r;
        }();
        return rules;
    }

    /// Rewrites p to degree < 2 in s using s^2 = n/d. Returns (r, j) with
    /// p == r / d^j exactly; r is s-linear and j = floor(deg_s(p) / 2).
    static std::pair<Polynomial, unsigned int>
    reduce_even_powers(const Polynomial& p, Symbol s, const Polynomial& n, const Polynomial& d) {
        unsigned int deg = p.degree_in(s);
        if (deg < 2) return {p, 0};
        unsigned int big_j = deg / 2;
        std::vector<Polynomial> cs = p.coefficients_in(s);
        Polynomial r;
        for (unsigned int k = 0; k < cs.size(); ++k) {
            if (cs[k].is_zero()) continue;
            unsigned int j = k / 2;
            Polynomial t = cs[k] * n.pow(j) * d.pow(big_j - j);
            if (k % 2 == 1) t *= Polynomial::variable(s);
            r += t;
        }
        return {r, big_j};
    }

  private:
    /// Constructs from parts already known to be canonical.
    static Scalar raw(Polynomial num, Polynomial den) {
        Scalar s;
        s.num_ = std::move(num);
        s.den_ = std::move(den);
        return s;
    }

    static Scalar substitute_poly(const Polynomial& p,
                                  const std::map<Symbol, Scalar, SymbolNameLess>& map) {
        Scalar out = 0;
        for (const auto& [m, c] : p.terms()) {
            Scalar t = c;
            for (const auto& [s, e] : m.factors()) {
                auto it = map.find(s);
                Scalar base = (it != map.end()) ? it->second : variable(s);
                t *= base.pow(static_cast<int>(e));
            }
            out += t;
        }
        return out;
    }

    void canonicalize() {
        if (den_.is_zero()) throw DomainError("scalar with zero denominator");
        if (num_.is_zero()) {
            den_ = Polynomial::one();
            return;
        }
        for (const auto& [s, rule] : quadratic_rules()) apply_rule(s, rule);
        Polynomial g = Polynomial::gcd(num_, den_);
        num_ = Polynomial::divide_exact(num_, g);
        den_ = Polynomial::divide_exact(den_, g);
        Coeff lead = den_.leading_coeff().inverse();
        num_ = num_ * lead;
        den_ = den_ * lead;
    }

    void apply_rule(Symbol s, const QuadraticRule& rule) {
        const Polynomial& n = rule.square_num;
        const Polynomial& d = rule.square_den;
        if (num_.degree_in(s) >= 2) {
            auto [r, j] = reduce_even_powers(num_, s, n, d);
            num_ = r;
            den_ = den_ * d.pow(j);
        }
        if (den_.degree_in(s) >= 2) {
            auto [r, j] = reduce_even_powers(den_, s, n, d);
            den_ = r;
            num_ = num_ * d.pow(j);
        }
        if (den_.degree_in(s) == 1) {
            // den = A + B s; multiply both parts by (A - B s) d so the new
            // denominator A^2 d - n B^2 is s-free.
            std::vector<Polynomial> cs = den_.coefficients_in(s);
            const Polynomial& a = cs[0];
            const Polynomial& b = cs[1];
            Polynomial conj = a - b * Polynomial::variable(s);
            num_ = num_ * conj * d;
            den_ = a * a * d - n * b * b;
            COVWAVE_REQUIRE(!den_.is_zero(), "quadratic rule produced a zero divisor");
            if (num_.degree_in(s) >= 2) {
                auto [r, j] = reduce_even_powers(num_, s, n, d);
                num_ = r;
                den_ = den_ * d.pow(j);
            }
        }
        COVWAVE_REQUIRE(num_.degree_in(s) <= 1 && den_.degree_in(s) == 0,
                        "quadratic reduction must leave a linear numerator");
    }

    Polynomial num_;
    Polynomial den_;
};

/// Truncated Maclaurin series of the boost factor in beta: the binomial
/// series of (1 - beta^2)^(-1/2) up to beta^order inclusive.
inline Polynomial gamma_series(int order) {
    COVWAVE_REQUIRE(order >= 0, "series order must be nonnegative");
    Polynomial out;
    Rational coeff = 1;
    for (int twok = 0; twok <= order; twok += 2) {
        out.add_term(Monomial::var(sym::beta(), static_cast<unsigned int>(twok)), Coeff(coeff));
        int k = twok / 2;
        coeff = coeff * Rational(2 * k + 1) / Rational(2 * k + 2);
    }
    return out;
}

/// Maclaurin coefficients c_0..c_order of f in the symbol s, computed with
/// exact arithmetic; the constant term of the denominator must not vanish.
/// Occurrences of the boost factor are first replaced by gamma_series, so
/// expanding in beta is meaningful.
inline std::vector<Scalar> series_in(const Scalar& f, Symbol s, int order) {
    COVWAVE_REQUIRE(order >= 0, "series order must be nonnegative");
    Scalar g = f;
    if (s == sym::beta() && f.contains(sym::gamma()))
        g = f.substitute(sym::gamma(), Scalar(gamma_series(order + 2)));
    auto split = [&](const Polynomial& p) {
        std::vector<Scalar> out;
        for (const Polynomial& c : p.coefficients_in(s)) out.push_back(Scalar(c));
        return out;
    };
    std::vector<Scalar> nc = split(g.num());
    std::vector<Scalar> dc = split(g.den());
    if (dc[0].is_zero()) throw DomainError("series_in: denominator vanishes at the origin");
    // Power-series inverse of the denominator, then the Cauchy product.
    std::vector<Scalar> inv(static_cast<std::size_t>(order) + 1);
    inv[0] = Scalar(1) / dc[0];
    for (int j = 1; j <= order; ++j) {
        Scalar acc = 0;
        for (int i = 1; i <= j; ++i) {
            if (i < static_cast<int>(dc.size())) acc += dc[static_cast<std::size_t>(i)] * inv[static_cast<std::size_t>(j - i)];
        }
        inv[static_cast<std::size_t>(j)] = -acc / dc[0];
    }
    std::vector<Scalar> out(static_cast<std::size_t>(order) + 1);
    for (int j = 0; j <= order; ++j) {
        Scalar acc = 0;
        for (int i = 0; i <= j; ++i) {
            if (i < static_cast<int>(nc.size())) acc += nc[static_cast<std::size_t>(i)] * inv[static_cast<std::size_t>(j - i)];
        }
        out[static_cast<std::size_t>(j)] = acc;
    }
    return out;
}

/// Exact boost factor for a rational speed ratio, when it is rational
/// itself (e.g. beta = 3/5 gives 5/4). Throws otherwise.
inline Rational lorentz_gamma_value(const Rational& beta) {
    Rational one_minus = 1 - beta * beta;
    if (one_minus <= 0) throw DomainError("speed ratio must satisfy |beta| < 1");
    auto root = exact_sqrt(Rational(1) / one_minus);
    if (!root) throw DomainError("boost factor is irrational for this speed ratio");
    return *root;
}

/// Substitutes a numeric speed ratio together with the matching boost
/// factor, keeping the pair consistent.
inline Scalar substitute_lorentz(const Scalar& f, const Rational& beta) {
    std::map<Symbol, Scalar, SymbolNameLess> m;
    m.emplace(sym::beta(), Scalar(beta));
    m.emplace(sym::gamma(), Scalar(lorentz_gamma_value(beta)));
    return f.substitute(m);
}

/// Canonical rendering: the bare numerator when the denominator is one,
/// otherwise "(num)/(den)".
inline std::string to_string(const Scalar& s) {
    if (s.den() == Polynomial::one()) return to_string(s.num());
    return "(" + to_string(s.num()) + ")/(" + to_string(s.den()) + ")";
}

} // namespace covwave

#endif // COVWAVE_SCALAR_HPP
