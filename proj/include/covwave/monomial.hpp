// SPDX-FileCopyrightText: 2026 covwave contributors
// SPDX-License-Identifier: Apache-2.0

/// @file monomial.hpp
/// @brief Power products of symbols with the graded lexicographic order.
///
/// A Monomial is a finite product of symbol powers, kept sorted by symbol
/// name. The global term order is graded first (higher total degree wins)
/// and then lexicographic over symbols in ascending name order, so between
/// equal-degree monomials the one with more weight on the alphabetically
/// earlier symbol is the larger. Every printer, leading-term choice and
/// normalization in the library uses this single order.

#ifndef COVWAVE_MONOMIAL_HPP
#define COVWAVE_MONOMIAL_HPP

#include "covwave/symbol.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace covwave {

/// Sorted power product of symbols; the empty product is the unit.
class Monomial {
  public:
    using Factor = std::pair<Symbol, unsigned int>;

    Monomial() = default;

    static Monomial unit() { return Monomial(); }

    static Monomial var(Symbol s, unsigned int e = 1) {
        Monomial m;
        if (e > 0) m.factors_.push_back({s, e});
        return m;
    }

    bool is_unit() const { return factors_.empty(); }

    const std::vector<Factor>& factors() const { return factors_; }

    unsigned int total_degree() const {
        unsigned int d = 0;
        for (const auto& [s, e] : factors_) d += e;
        return d;
    }

    unsigned int degree_in(Symbol s) const {
        for (const auto& [t, e] : factors_)
            if (t == s) return e;
        return 0;
    }

    bool contains(Symbol s) const { return degree_in(s) > 0; }

    friend bool operator==(const Monomial&, const Monomial&) = default;

    friend Monomial operator*(const Monomial& x, const Monomial& y) {
        Monomial out;
        auto ix = x.factors_.begin();
        auto iy = y.factors_.begin();
        while (ix != x.factors_.end() || iy != y.factors_.end()) {
            if (iy == y.factors_.end())
                out.factors_.push_back(*ix++);
            else if (ix == x.factors_.end())
                out.factors_.push_back(*iy++);
            else {
                int cmp = compare_name(ix->first, iy->first);
                if (cmp < 0)
                    out.factors_.push_back(*ix++);
                else if (cmp > 0)
                    out.factors_.push_back(*iy++);
                else {
                    out.factors_.push_back({ix->first, ix->second + iy->second});
                    ++ix;
                    ++iy;
                }
            }
        }
        return out;
    }

    /// Exact quotient num / den, or nullopt when den does not divide num.
    static std::optional<Monomial> divide(const Monomial& num, const Monomial& den) {
        Monomial out;
        auto in = num.factors_.begin();
        for (const auto& [s, e] : den.factors_) {
            while (in != num.factors_.end() && compare_name(in->first, s) < 0)
                out.factors_.push_back(*in++);
            if (in == num.factors_.end() || !(in->first == s) || in->second < e)
                return std::nullopt;
            if (in->second > e) out.factors_.push_back({s, in->second - e});
            ++in;
        }
        while (in != num.factors_.end()) out.factors_.push_back(*in++);
        return out;
    }

    /// Componentwise minimum of exponents.
    static Monomial gcd(const Monomial& x, const Monomial& y) {
        Monomial out;
        auto ix = x.factors_.begin();
        auto iy = y.factors_.begin();
        while (ix != x.factors_.end() && iy != y.factors_.end()) {
            int cmp = compare_name(ix->first, iy->first);
            if (cmp < 0)
                ++ix;
            else if (cmp > 0)
                ++iy;
            else {
                out.factors_.push_back({ix->first, std::min(ix->second, iy->second)});
                ++ix;
                ++iy;
            }
        }
        return out;
    }

    Monomial pow(unsigned int e) const {
        Monomial out;
        if (e == 0) return out;
        out.factors_ = factors_;
        for (auto& [s, k] : out.factors_) k *= e;
        return out;
    }

    /// Graded-lex comparison; returns -1, 0 or +1 as x <, ==, > y.
    static int compare(const Monomial& x, const Monomial& y) {
        unsigned int dx = x.total_degree();
        unsigned int dy = y.total_degree();
        if (dx != dy) return dx < dy ? -1 : 1;
        auto ix = x.factors_.begin();
        auto iy = y.factors_.begin();
        while (ix != x.factors_.end() || iy != y.factors_.end()) {
            // Walk the union of symbols in ascending name order; at the first
            // name where the exponents differ, the larger exponent wins.
            int cmp;
            if (iy == y.factors_.end())
                cmp = -1;
            else if (ix == x.factors_.end())
                cmp = 1;
            else
                cmp = compare_name(ix->first, iy->first);
            if (cmp < 0) return 1;  // x has weight on an earlier symbol
            if (cmp > 0) return -1; // y has weight on an earlier symbol
            if (ix->second != iy->second) return ix->second > iy->second ? 1 : -1;
            ++ix;
            ++iy;
        }
        return 0;
    }

  private:
    std::vector<Factor> factors_; ///< ascending symbol-name order, exponents > 0
};

/// Strict weak orders for containers; polynomials store terms descending so
/// the leading term is always at the front.
struct MonomialLess {
    bool operator()(const Monomial& a, const Monomial& b) const {
        return Monomial::compare(a, b) < 0;
    }
};
struct MonomialGreater {
    bool operator()(const Monomial& a, const Monomial& b) const {
        return Monomial::compare(a, b) > 0;
    }
};

/// Renders as "*"-joined powers, e.g. "hbar^2*m", or "1" for the unit.
inline std::string to_string(const Monomial& m) {
    if (m.is_unit()) return "1";
    std::string out;
    for (const auto& [s, e] : m.factors()) {
        if (!out.empty()) out += "*";
        out += s.name();
        if (e > 1) out += "^" + std::to_string(e);
    }
    return out;
}

} // namespace covwave

#endif // COVWAVE_MONOMIAL_HPP
