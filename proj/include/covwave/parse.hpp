// SPDX-FileCopyrightText: 2026 covwave contributors
// SPDX-License-Identifier: Apache-2.0

/// @file parse.hpp
/// @brief Recursive-descent parser for the canonical scalar syntax.
///
/// Accepts exactly the language the to_string printers emit (plus benign
/// whitespace), so print -> parse is the identity on canonical forms:
///
///   sum     := ['-'] product ( ('+'|'-') product )*
///   product := factor ( ('*'|'/') factor )*        (left associative)
///   factor  := atom [ '^' digits ]
///   atom    := digits | 'i' | 'r2' | name | '(' sum ')'
///
/// "i" and "r2" are reserved for the imaginary unit and sqrt(2); any other
/// name is interned as a parameter symbol. Errors carry the byte offset of
/// the offending character.

#ifndef COVWAVE_PARSE_HPP
#define COVWAVE_PARSE_HPP

#include "covwave/scalar.hpp"

#include <cctype>
#include <string>
#include <string_view>

namespace covwave {

namespace detail {

class ScalarParser {
  public:
    explicit ScalarParser(std::string_view text) : text_(text) {}

    Scalar parse() {
        Scalar value = parse_sum();
        skip_space();
        if (pos_ != text_.size()) fail("trailing input");
        return value;
    }

  private:
    [[noreturn]] void fail(const std::string& what) const {
        throw ParseError("scalar syntax: " + what, pos_);
    }

    void skip_space() {
        while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t')) ++pos_;
    }

    bool eat(char c) {
        skip_space();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    char peek() {
        skip_space();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }

    Scalar parse_sum() {
        bool negate = eat('-');
        Scalar value = parse_product();
        if (negate) value = -value;
        while (true) {
            if (eat('+'))
                value += parse_product();
            else if (eat('-'))
                value -= parse_product();
            else
                return value;
        }
    }

    Scalar parse_product() {
        Scalar value = parse_factor();
        while (true) {
            if (eat('*'))
                value *= parse_factor();
            else if (eat('/'))
                value /= parse_factor();
            else
                return value;
        }
    }

    Scalar parse_factor() {
        Scalar base = parse_atom();
        if (eat('^')) return base.pow(parse_int());
        return base;
    }

    int parse_int() {
        skip_space();
        std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (pos_ == start) fail("expected an exponent");
        int value = 0;
        for (std::size_t i = start; i < pos_; ++i) {
            value = value * 10 + (text_[i] - '0');
            if (value > 64) fail("exponent too large");
        }
        return value;
    }

    Scalar parse_atom() {
        skip_space();
        if (pos_ >= text_.size()) fail("unexpected end of input");
        char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            Scalar inner = parse_sum();
            if (!eat(')')) fail("expected ')'");
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
                ++pos_;
            Integer n(std::string(text_.substr(start, pos_ - start)));
            return Scalar(Rational(n));
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos_;
            while (pos_ < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
                ++pos_;
            std::string name(text_.substr(start, pos_ - start));
            if (name == "i") return Scalar(Coeff::i());
            if (name == "r2") return Scalar(Coeff::sqrt2());
            if (auto known = Symbol::lookup(name)) return Scalar::variable(*known);
            return Scalar::variable(Symbol::intern(name));
        }
        fail("unexpected character");
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

} // namespace detail

/// Parses the canonical scalar syntax; throws ParseError on bad input.
inline Scalar parse_scalar(std::string_view text) { return detail::ScalarParser(text).parse(); }

} // namespace covwave

#endif // COVWAVE_PARSE_HPP
