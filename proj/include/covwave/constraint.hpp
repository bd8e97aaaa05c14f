// SPDX-FileCopyrightText: 2026 covwave contributors
// SPDX-License-Identifier: Apache-2.0

/// @file constraint.hpp
/// @brief Covariance constraint systems extracted from operator pairs.
///
/// Comparing an operator with its transformed image yields one equation
/// per derivative monomial. Covariance only demands agreement up to one
/// overall nonzero factor, so two comparison modes exist:
///
///  - unit: the factor is pinned to one (used for rotations, where the
///    factor composes multiplicatively over the group and squares to
///    itself, hence equals one) and each slot gives transformed minus
///    original = 0.
///
///  - cross_ratio: the factor is eliminated. A reference monomial m0 is
///    chosen from the original operator - the greatest monomial whose
///    coefficient is a unit multiple of a monomial in symbols assumed
///    nonzero, so the reference coefficient cannot silently vanish - and
///    each remaining slot m contributes T_m L_m0 - T_m0 L_m = 0. The
///    factor itself is recorded as T_m0 / L_m0.
///
/// Equations are normalized: numerator only, positive rational content
/// removed, sign fixed by the leading coefficient, zero equations dropped
/// and duplicates removed. Every equation keeps a stable id and an origin
/// label naming the monomial slot it came from.

#ifndef COVWAVE_CONSTRAINT_HPP
#define COVWAVE_CONSTRAINT_HPP

#include "covwave/linear_pde.hpp"

#include <optional>
#include <set>
#include <string>
#include <vector>

namespace covwave {

/// How the overall covariance factor is handled.
enum class Proportionality { unit, cross_ratio };

/// One normalized equation lhs = 0, tagged with the slot pair it came from.
struct ConstraintEquation {
    int id = 0;
    Scalar lhs;
    std::string origin;
};

/// Removes positive rational content and fixes the overall sign so equal
/// equations become structurally identical.
inline Polynomial normalize_equation(Polynomial p) {
    if (p.is_zero()) return p;
    Rational content = p.numeric_content();
    p = p * Coeff(Rational(1) / content);
    if (p.leading_coeff().canonical_sign() < 0) p = -p;
    return p;
}

/// Divides out the common monomial factor restricted to symbols assumed
/// nonzero (dividing by anything else could discard solutions).
inline Polynomial strip_nonzero_factors(const Polynomial& p,
                                        const std::set<Symbol, SymbolNameLess>& nonzero) {
    if (p.is_zero()) return p;
    Monomial common = p.monomial_content();
    Monomial keep;
    for (const auto& [s, e] : common.factors())
        if (nonzero.count(s) > 0) keep = keep * Monomial::var(s, e);
    if (keep.is_unit()) return p;
    return Polynomial::divide_exact(p, Polynomial::term(keep, Coeff::one()));
}

/// A list of normalized equations, each required to vanish, plus the
/// handling mode of the overall factor.
class ConstraintSystem {
  public:
    explicit ConstraintSystem(Proportionality mode = Proportionality::unit) : mode_(mode) {}

    Proportionality mode() const { return mode_; }
    const std::vector<ConstraintEquation>& equations() const { return equations_; }
    bool empty() const { return equations_.empty(); }
    std::size_t size() const { return equations_.size(); }

    /// The free factor symbol (cross-ratio mode only).
    const std::optional<Symbol>& proportionality() const { return proportionality_; }
    /// The eliminated factor, as transformed-over-original at the reference.
    const std::optional<Scalar>& factor_value() const { return factor_value_; }
    const std::optional<DerivMono>& reference() const { return reference_; }

    void set_factor(Symbol sym, Scalar value, DerivMono ref) {
        proportionality_ = sym;
        factor_value_ = std::move(value);
        reference_ = ref;
    }

    /// Normalizes and appends; zero and duplicate equations are dropped.
    void append(const Scalar& lhs, const std::string& origin) {
        Polynomial p = normalize_equation(lhs.num());
        if (p.is_zero()) return;
        for (const ConstraintEquation& e : equations_)
            if (e.lhs.num() == p) return;
        equations_.push_back(ConstraintEquation{next_id_++, Scalar(p), origin});
    }

    /// Merges another system's equations (ids are reassigned in order).
    void extend(const ConstraintSystem& other) {
        for (const ConstraintEquation& e : other.equations()) append(e.lhs, e.origin);
    }

  private:
    Proportionality mode_;
    std::vector<ConstraintEquation> equations_;
    std::optional<Symbol> proportionality_;
    std::optional<Scalar> factor_value_;
    std::optional<DerivMono> reference_;
    int next_id_ = 1;
};

/// Deterministic text form, one equation per line.
inline std::string to_string(const ConstraintSystem& cs) {
    std::string out;
    for (const ConstraintEquation& e : cs.equations())
        out += "eq " + std::to_string(e.id) + " [" + e.origin + "]: " + to_string(e.lhs) +
               " = 0\n";
    if (cs.factor_value())
        out += "factor: " + to_string(*cs.factor_value()) + "\n";
    return out;
}

namespace detail {

/// True when the coefficient is a unit times a monomial whose symbols all
/// lie in the nonzero set; such coefficients may be divided by.
inline bool is_nonzero_unit_monomial(const Scalar& c,
                                     const std::set<Symbol, SymbolNameLess>& nonzero) {
    if (c.is_zero()) return false;
    if (c.num().term_count() != 1 || c.den().term_count() != 1) return false;
    for (const Polynomial* part : {&c.num(), &c.den()})
        for (const auto& [s, e] : part->terms().begin()->first.factors())
            if (nonzero.count(s) == 0) return false;
    return true;
}

/// All monomial slots (including the zeroth) present in either operator.
inline std::vector<DerivMono> slot_union(const LinearPDE& a, const LinearPDE& b) {
    std::set<DerivMono, DerivMonoGreater> slots;
    for (const auto& [m, c] : a.terms()) slots.insert(m);
    for (const auto& [m, c] : b.terms()) slots.insert(m);
    slots.insert(DerivMono::unit());
    return {slots.begin(), slots.end()};
}

inline std::string slot_label(const DerivMono& m) {
    return m.is_zeroth() ? "potential" : "mono " + m.digits();
}

} // namespace detail

/// Builds the covariance system for `transformed` against `original`.
/// In cross-ratio mode, `nonzero` guides the reference-monomial choice and
/// must list the symbols the derivation treats as nonvanishing.
inline ConstraintSystem covariance_constraints(const LinearPDE& original,
                                               const LinearPDE& transformed,
                                               Proportionality mode = Proportionality::cross_ratio,
                                               const std::set<Symbol, SymbolNameLess>& nonzero = {}) {
    if (transformed.is_zero())
        throw DomainError("covariance against an identically zero operator");
    ConstraintSystem cs(mode);

    if (mode == Proportionality::unit) {
        for (const DerivMono& m : detail::slot_union(original, transformed))
            cs.append(transformed.coefficient(m) - original.coefficient(m),
                      detail::slot_label(m));
        return cs;
    }

    // Reference choice: greatest original monomial with a coefficient that
    // is a unit times a nonzero-symbol monomial; fall back to the greatest
    // original monomial when none qualifies.
    std::optional<DerivMono> ref;
    for (const auto& [m, c] : original.terms())
        if (detail::is_nonzero_unit_monomial(c, nonzero)) {
            ref = m;
            break; // map is ordered greatest-first
        }
    if (!ref && !original.terms().empty()) ref = original.terms().begin()->first;
    if (!ref) throw DomainError("covariance needs at least one derivative term");

    Scalar l0 = original.coefficient(*ref);
    Scalar t0 = transformed.coefficient(*ref);
    cs.set_factor(Symbol::intern("lambda"), t0 / l0, *ref);

    for (const DerivMono& m : detail::slot_union(original, transformed)) {
        if (m == *ref) continue;
        Scalar eq = transformed.coefficient(m) * l0 - t0 * original.coefficient(m);
        // Common factors of assumed-nonzero symbols carry no information;
        // divide them out so equations appear in their conventional form.
        cs.append(Scalar(strip_nonzero_factors(normalize_equation(eq.num()), nonzero)),
                  detail::slot_label(m));
    }
    return cs;
}

} // namespace covwave

#endif // COVWAVE_CONSTRAINT_HPP
