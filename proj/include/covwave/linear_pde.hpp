// SPDX-FileCopyrightText: 2026 covwave contributors
// SPDX-License-Identifier: Apache-2.0

/// @file linear_pde.hpp
/// @brief Constant-coefficient linear differential operators.
///
/// A LinearPDE is a finite sum of Scalar-weighted derivative monomials of
/// order one to four, plus a dedicated zeroth-order slot, the `potential`.
/// The potential coefficient is an ordinary Scalar; the reserved symbols
/// "f" (an unconstrained frame-invariant source term) and "V" (a constant
/// potential strength) live inside it until a derivation binds them.
/// Operators print and parse in a canonical text form, greatest derivative
/// monomial first, potential last.

#ifndef COVWAVE_LINEAR_PDE_HPP
#define COVWAVE_LINEAR_PDE_HPP

#include "covwave/derivative.hpp"
#include "covwave/parse.hpp"
#include "covwave/scalar.hpp"

#include <map>
#include <string>
#include <string_view>
#include <utility>

namespace covwave {

/// Linear operator  sum_alpha  c_alpha d^alpha  +  potential.
class LinearPDE {
  public:
    using TermMap = std::map<DerivMono, Scalar, DerivMonoGreater>;

    LinearPDE() = default;

    static LinearPDE zero() { return LinearPDE(); }

    /// The operator consisting of one derivative term.
    static LinearPDE term(const DerivMono& m, Scalar c) {
        LinearPDE op;
        op.add_term(m, std::move(c));
        return op;
    }

    const TermMap& terms() const { return terms_; }
    const Scalar& potential() const { return potential_; }

    void set_potential(Scalar p) { potential_ = std::move(p); }

    /// Adds c * d^alpha, merging with an existing term; zeroth-order
    /// contributions accumulate into the potential slot.
    void add_term(const DerivMono& m, const Scalar& c) {
        if (c.is_zero()) return;
        if (m.is_zeroth()) {
            potential_ += c;
            return;
        }
        auto [it, inserted] = terms_.emplace(m, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    Scalar coefficient(const DerivMono& m) const {
        if (m.is_zeroth()) return potential_;
        auto it = terms_.find(m);
        return it == terms_.end() ? Scalar(0) : it->second;
    }

    bool is_zero() const { return terms_.empty() && potential_.is_zero(); }

    unsigned int total_order() const {
        unsigned int o = 0;
        for (const auto& [m, c] : terms_) o = std::max(o, m.order());
        return o;
    }

    friend bool operator==(const LinearPDE&, const LinearPDE&) = default;

    friend LinearPDE operator+(const LinearPDE& x, const LinearPDE& y) {
        LinearPDE out = x;
        for (const auto& [m, c] : y.terms_) out.add_term(m, c);
        out.potential_ += y.potential_;
        return out;
    }
    friend LinearPDE operator-(const LinearPDE& x, const LinearPDE& y) {
        return x + y.scaled(Scalar(-1));
    }

    /// The operator with every coefficient (potential included) scaled.
    LinearPDE scaled(const Scalar& s) const {
        LinearPDE out;
        for (const auto& [m, c] : terms_) out.add_term(m, c * s);
        out.potential_ = potential_ * s;
        return out;
    }

    /// Applies a symbol substitution to every coefficient.
    LinearPDE substituted(const std::map<Symbol, Scalar, SymbolNameLess>& map) const {
        LinearPDE out;
        for (const auto& [m, c] : terms_) out.add_term(m, c.substitute(map));
        out.potential_ = potential_.substitute(map);
        return out;
    }

  private:
    TermMap terms_;
    Scalar potential_;
};

/// Canonical rendering: "(c)*dmono" terms greatest-first, then "(potential)",
/// joined by " + "; the zero operator prints as "0". Coefficients are always
/// parenthesized so the form re-parses unambiguously.
inline std::string to_string(const LinearPDE& op) {
    if (op.is_zero()) return "0";
    std::string out;
    auto append = [&out](const std::string& piece) {
        if (!out.empty()) out += " + ";
        out += piece;
    };
    for (const auto& [m, c] : op.terms())
        append("(" + to_string(c) + ")*" + to_string(m));
    if (!op.potential().is_zero()) append("(" + to_string(op.potential()) + ")");
    return out;
}

namespace detail {

inline DerivMono parse_deriv_mono(std::string_view text, std::size_t base_offset) {
    std::array<unsigned int, 4> alpha{0, 0, 0, 0};
    std::size_t pos = 0;
    auto fail = [&](const std::string& what) -> void {
        throw ParseError("operator syntax: " + what, base_offset + pos);
    };
    while (pos < text.size()) {
        if (text[pos] != 'd') fail("expected a derivative factor");
        ++pos;
        if (pos >= text.size() || text[pos] < '0' || text[pos] > '3')
            fail("expected a coordinate index 0..3");
        int mu = text[pos] - '0';
        ++pos;
        unsigned int e = 1;
        if (pos < text.size() && text[pos] == '^') {
            ++pos;
            if (pos >= text.size() || text[pos] < '1' || text[pos] > '9')
                fail("expected an exponent");
            e = static_cast<unsigned int>(text[pos] - '0');
            ++pos;
        }
        alpha[static_cast<std::size_t>(mu)] += e;
        if (pos < text.size()) {
            if (text[pos] != '*') fail("expected '*'");
            ++pos;
            if (pos >= text.size()) fail("dangling '*'");
        }
    }
    return DerivMono(alpha);
}

} // namespace detail

/// Parses the canonical operator syntax emitted by to_string(LinearPDE).
inline LinearPDE parse_linear_pde(std::string_view text) {
    if (text == "0") return LinearPDE::zero();
    LinearPDE out;
    std::size_t pos = 0;
    while (true) {
        if (pos >= text.size() || text[pos] != '(')
            throw ParseError("operator syntax: expected '('", pos);
        int depth = 0;
        std::size_t close = pos;
        for (; close < text.size(); ++close) {
            if (text[close] == '(') ++depth;
            if (text[close] == ')' && --depth == 0) break;
        }
        if (depth != 0) throw ParseError("operator syntax: unbalanced '('", pos);
        Scalar coeff = parse_scalar(text.substr(pos + 1, close - pos - 1));
        std::size_t rest = close + 1;
        std::size_t next = text.find(" + ", rest);
        std::size_t end = (next == std::string_view::npos) ? text.size() : next;
        if (rest < end) {
            if (text[rest] != '*') throw ParseError("operator syntax: expected '*'", rest);
            DerivMono m = detail::parse_deriv_mono(text.substr(rest + 1, end - rest - 1), rest + 1);
            if (m.is_zeroth()) throw ParseError("operator syntax: empty derivative", rest);
            out.add_term(m, coeff);
        } else {
            out.set_potential(out.potential() + coeff);
        }
        if (next == std::string_view::npos) break;
        pos = next + 3;
    }
    return out;
}

} // namespace covwave

#endif // COVWAVE_LINEAR_PDE_HPP
