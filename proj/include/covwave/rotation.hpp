// SPDX-FileCopyrightText: 2026 covwave contributors
// SPDX-License-Identifier: Apache-2.0

/// @file rotation.hpp
/// @brief Rotation covariance of the general operator at a given order.
///
/// The general operator of order n carries one symbolic coefficient per
/// derivative monomial of order 1..n (time included) plus the potential
/// slot: b0..b3 at first order and a-symbols named by their sorted index
/// digits at higher orders (a01 multiplies d0*d1, a0011 multiplies
/// d0^2*d1^2). Rotation covariance is imposed on a finite catalog of
/// exact rotations - pi and pi/2 about each spatial axis and pi/4 about
/// x3 - with the overall factor pinned to one: rotations compose into the
/// identity within the catalog's group, so the factor is a root of unity
/// in a field where only +-1 qualify, and pi about an axis applied twice
/// forces +1. The resulting linear system is reduced exactly; the free
/// survivors are renamed to the conventional coefficient letters and the
/// pivot bindings substituted back, giving the rotation-covariant reduced
/// operator each derivation pipeline starts from.
///
/// Adding more sampled rotations (pi/4 about x1 and x2) does not change
/// the solution space; rotation_set_stable checks this via the uniqueness
/// of the reduced row echelon form.

#ifndef COVWAVE_ROTATION_HPP
#define COVWAVE_ROTATION_HPP

#include "covwave/constraint.hpp"
#include "covwave/frame.hpp"
#include "covwave/linear_system.hpp"

#include <algorithm>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace covwave {

/// Everything learned from imposing rotation covariance at one order.
struct RotationAnalysis {
    unsigned int order = 2;
    LinearPDE general;       ///< fully general operator, symbolic coefficients
    ConstraintSystem system; ///< accumulated unit-factor covariance equations
    LinearSolution solution; ///< exact reduction over the tensor symbols
    /// surviving free symbol -> conventional coefficient name
    std::map<Symbol, Symbol, SymbolNameLess> renaming;
    LinearPDE reduced; ///< general operator with the solution substituted
};

namespace detail {

/// All multisets of {0,1,2,3} of size k, each as a derivative monomial
/// with its tensor-symbol name ("a" + ascending digits).
inline void tensor_slots(unsigned int k, std::vector<std::pair<std::string, DerivMono>>& out) {
    std::vector<int> pick(k, 0);
    while (true) {
        std::string name = "a";
        DerivMono mono;
        for (int mu : pick) {
            name += static_cast<char>('0' + mu);
            mono = mono * DerivMono::d(mu);
        }
        out.emplace_back(std::move(name), mono);
        // next multiset in lexicographic order
        std::size_t i = k;
        while (i > 0 && pick[i - 1] == 3) --i;
        if (i == 0) break;
        int next = pick[i - 1] + 1;
        for (std::size_t j = i - 1; j < k; ++j) pick[j] = next;
    }
}

} // namespace detail

/// The order-n general operator: b-mu at first order, a-symbols at orders
/// 2..n, and the opaque potential f in the zeroth slot.
inline LinearPDE general_operator(unsigned int order) {
    COVWAVE_REQUIRE(order >= 2 && order <= max_derivative_order,
                    "general operator order out of range");
    LinearPDE op;
    for (int mu = 0; mu <= 3; ++mu)
        op.add_term(DerivMono::d(mu),
                    Scalar::variable(Symbol::intern("b" + std::to_string(mu))));
    for (unsigned int k = 2; k <= order; ++k) {
        std::vector<std::pair<std::string, DerivMono>> slots;
        detail::tensor_slots(k, slots);
        for (auto& [name, mono] : slots)
            op.add_term(mono, Scalar::variable(Symbol::intern(name)));
    }
    op.add_term(DerivMono::unit(), Scalar::variable(sym::f()));
    return op;
}

/// The symbolic coefficients of general_operator(order), potential excluded,
/// sorted descending by name (the column order the reduction uses, chosen so
/// the conventional survivors come out as the free symbols).
inline std::vector<Symbol> tensor_symbols(unsigned int order) {
    std::vector<Symbol> out;
    const LinearPDE op = general_operator(order);
    for (const auto& [m, c] : op.terms())
        if (!m.is_zeroth()) out.push_back(c.num().terms().begin()->first.factors()[0].first);
    std::sort(out.begin(), out.end(),
              [](Symbol a, Symbol b) { return compare_name(b, a) < 0; });
    return out;
}

/// The finite rotation catalog the analysis samples.
inline std::vector<FrameTransform> rotation_catalog() {
    std::vector<FrameTransform> out;
    for (int axis : {1, 2, 3}) out.push_back(FrameTransform::rotation_pi(axis));
    for (int axis : {1, 2, 3}) out.push_back(FrameTransform::rotation_half_pi(axis));
    out.push_back(FrameTransform::rotation_quarter_pi(3));
    return out;
}

/// The catalog plus pi/4 about x1 and x2, used by the stability check.
inline std::vector<FrameTransform> extended_rotation_catalog() {
    std::vector<FrameTransform> out = rotation_catalog();
    out.push_back(FrameTransform::rotation_quarter_pi(1));
    out.push_back(FrameTransform::rotation_quarter_pi(2));
    return out;
}

/// Accumulates the unit-factor covariance system of `op` over a rotation
/// catalog; origins are prefixed with the rotation label.
inline ConstraintSystem rotation_system(const LinearPDE& op,
                                        const std::vector<FrameTransform>& catalog) {
    ConstraintSystem cs(Proportionality::unit);
    for (const FrameTransform& r : catalog) {
        LinearPDE rotated = boost_operator(op, r, ExpLinearMultiplier::identity());
        ConstraintSystem part = covariance_constraints(op, rotated, Proportionality::unit);
        for (const ConstraintEquation& e : part.equations())
            cs.append(e.lhs, r.label() + ", " + e.origin);
    }
    return cs;
}

namespace detail {

inline std::map<Symbol, Symbol, SymbolNameLess> rotation_renaming(unsigned int order) {
    auto by = [](const char* from, Symbol to) {
        return std::pair<const Symbol, Symbol>(Symbol::intern(from), to);
    };
    std::map<Symbol, Symbol, SymbolNameLess> map;
    if (order == 2) {
        map.insert(by("a00", sym::by_name("Abar")));
        map.insert(by("a11", sym::by_name("Bbar")));
        map.insert(by("b0", sym::by_name("Cbar")));
        return map;
    }
    map.insert(by("a000", sym::by_name("atil")));
    map.insert(by("a011", sym::by_name("bbar")));
    map.insert(by("a00", sym::by_name("Abar")));
    map.insert(by("a11", sym::by_name("B")));
    map.insert(by("b0", sym::by_name("Cbar")));
    if (order >= 4) {
        map.insert(by("a0000", sym::by_name("Atil")));
        map.insert(by("a1111", sym::by_name("Btil")));
        map.insert(by("a0011", sym::by_name("Ctil")));
    }
    return map;
}

} // namespace detail

/// Runs the full rotation analysis at the given order.
inline RotationAnalysis rotation_constraints(unsigned int order) {
    RotationAnalysis out;
    out.order = order;
    out.general = general_operator(order);

    std::vector<Symbol> unknowns = tensor_symbols(order);

    out.system = rotation_system(out.general, rotation_catalog());
    std::vector<Polynomial> eqs;
    for (const ConstraintEquation& e : out.system.equations()) eqs.push_back(e.lhs.num());
    out.solution = solve_linear(eqs, unknowns);
    COVWAVE_REQUIRE(out.solution.consistent, "rotation system must be consistent");

    out.renaming = detail::rotation_renaming(order);

    std::map<Symbol, Scalar, SymbolNameLess> rename_values;
    for (const auto& [from, to] : out.renaming) rename_values.emplace(from, Scalar::variable(to));
    std::map<Symbol, Scalar, SymbolNameLess> substitution = rename_values;
    for (const auto& [pivot, value] : out.solution.pivot_values)
        substitution.emplace(pivot, value.substitute(rename_values));
    out.reduced = out.general.substituted(substitution);
    return out;
}

/// True when enlarging the sampled rotation set leaves the solution space
/// unchanged (checked through RREF uniqueness).
inline bool rotation_set_stable(unsigned int order) {
    LinearPDE op = general_operator(order);
    std::vector<Symbol> unknowns = tensor_symbols(order);

    auto reduce = [&](const std::vector<FrameTransform>& catalog) {
        const ConstraintSystem cs = rotation_system(op, catalog);
        std::vector<Polynomial> eqs;
        for (const ConstraintEquation& e : cs.equations()) eqs.push_back(e.lhs.num());
        return solve_linear(eqs, unknowns);
    };
    return same_solution_space(reduce(rotation_catalog()), reduce(extended_rotation_catalog()));
}

} // namespace covwave

#endif // COVWAVE_ROTATION_HPP
