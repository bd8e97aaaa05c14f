// SPDX-FileCopyrightText: 2026 covwave contributors
// SPDX-License-Identifier: Apache-2.0

/// @file numeric.hpp
/// @brief Exact rational arithmetic primitives and shared error types.
///
/// The whole symbolic layer works over arbitrary-precision rationals from
/// Boost.Multiprecision; nothing in the symbolic modules ever touches a
/// floating-point number.

#ifndef COVWAVE_NUMERIC_HPP
#define COVWAVE_NUMERIC_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <stdexcept>
#include <string>

namespace covwave {

using Integer  = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Raised when an operation is mathematically undefined for its inputs
/// (division by zero, substitution producing a zero denominator, ...).
/// These are *reported* conditions: callers such as the CLI catch them and
/// turn them into error messages, never crashes.
class DomainError : public std::runtime_error {
public:
    explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

/// Raised when an internal invariant is violated; indicates a library bug,
/// not a user error.
class InternalError : public std::logic_error {
public:
    explicit InternalError(const std::string& what) : std::logic_error(what) {}
};

/// Raised by the text parsers on malformed input; carries a byte offset.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t position)
        : std::runtime_error(what + " (at offset " + std::to_string(position) + ")"),
          position_(position) {}
    std::size_t position() const { return position_; }

private:
    std::size_t position_;
};

#define COVWAVE_REQUIRE(cond, msg)                                                 \
    do {                                                                           \
        if (!(cond)) throw ::covwave::InternalError(std::string("invariant: ") + (msg)); \
    } while (0)

/// Non-negative gcd of two rationals: gcd(p1/q1, p2/q2) = gcd(p1,p2)/lcm(q1,q2).
/// Used to strip numeric content out of polynomials; gcd(x, 0) = |x|.
inline Rational rational_gcd(const Rational& a, const Rational& b) {
    using boost::multiprecision::gcd;
    using boost::multiprecision::lcm;
    if (a == 0) return abs(b);
    if (b == 0) return abs(a);
    Integer pn = gcd(abs(numerator(a)), abs(numerator(b)));
    Integer qd = lcm(denominator(a), denominator(b));
    return Rational(pn, qd);
}

/// Exact integer square root together with an exactness flag.
inline std::optional<Integer> exact_isqrt(const Integer& n) {
    if (n < 0) return std::nullopt;
    Integer r = boost::multiprecision::sqrt(n);
    if (r * r == n) return r;
    return std::nullopt;
}

/// Exact square root of a non-negative rational, if it is a perfect square.
inline std::optional<Rational> exact_sqrt(const Rational& q) {
    if (q < 0) return std::nullopt;
    auto n = exact_isqrt(Integer(numerator(q)));
    auto d = exact_isqrt(Integer(denominator(q)));
    if (n && d) return Rational(*n, *d);
    return std::nullopt;
}

/// Renders a rational as "p" or "p/q" (q > 0 canonical in cpp_rational).
inline std::string to_string(const Rational& q) {
    std::string s = numerator(q).str();
    if (denominator(q) != 1) s += "/" + denominator(q).str();
    return s;
}

} // namespace covwave

#endif // COVWAVE_NUMERIC_HPP
