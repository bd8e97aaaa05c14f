// SPDX-FileCopyrightText: 2026 covwave contributors
// SPDX-License-Identifier: Apache-2.0

/// @file solve.hpp
/// @brief Staged exact solver for covariance constraint systems.
///
/// The systems the boost pipelines produce are small but mix three sorts
/// of symbols: ordinary coefficient unknowns, multiplier exponents, and
/// "universal" symbols (the boost speed and the opaque potential marker)
/// over which every equation must hold identically. The solver loops over
/// four deterministic stages until quiescent:
///
///   1. normalize: keep numerators, strip factors known nonzero, fix
///      content and sign, drop zero and duplicate equations;
///   2. universalize: equations free of multiplier unknowns split into
///      one equation per power pattern of the universal symbols (with a
///      preliminary split on the boost factor when the speed ratio is
///      universal, since the factor is not a rational function of it);
///   3. forced zeros: a single-term equation whose only not-known-nonzero
///      symbol is s forces s = 0; lower-degree witnesses are preferred;
///   4. elimination: unknowns listed in elimination order, then multiplier
///      exponents, are solved from equations linear in them whenever the
///      linear coefficient is a unit times a monomial in nonzero symbols.
///
/// Bindings are closed under back-substitution at the end; remaining
/// equations must normalize to zero or the system is unsatisfiable. An
/// equation that normalizes to a nonzero constant is a contradiction.

#ifndef COVWAVE_SOLVE_HPP
#define COVWAVE_SOLVE_HPP

#include "covwave/constraint.hpp"
#include "covwave/multiplier.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace covwave {

/// Knobs for one solver run.
struct SolverOptions {
    /// Symbols the derivation assumes nonvanishing; the solver may divide
    /// by them and never binds them.
    std::set<Symbol, SymbolNameLess> assumed_nonzero;
    /// Symbols over which equations must hold identically (boost speed,
    /// opaque potential marker).
    std::set<Symbol, SymbolNameLess> universals;
    /// Coefficient unknowns, in the order they should be eliminated.
    std::vector<Symbol> eliminate;
    /// Multiplier exponent unknowns (their equations are speed-dependent
    /// and are never universalized).
    std::vector<Symbol> multiplier_unknowns;
    /// Bindings imposed before solving (e.g. a constant-multiplier branch).
    std::map<Symbol, Scalar, SymbolNameLess> prebound;
};

/// One trace entry: what was concluded and which equation id backs it.
struct SolveStep {
    std::string action; ///< "prebound" | "forced-zero" | "linear-solve" | "multiplier-solve"
    int eq_id = 0;      ///< citing equation id; 0 when none applies
    std::string detail;
};

/// Outcome of a solver run.
struct SolveResult {
    bool satisfiable = true;
    std::string failure; ///< reason when unsatisfiable
    std::map<Symbol, Scalar, SymbolNameLess> bindings;
    std::vector<Symbol> forced_zero; ///< symbols concluded to vanish
    std::vector<SolveStep> trace;
    std::vector<ConstraintEquation> residual; ///< equations that did not vanish
};

namespace detail {

struct WorkEq {
    int id;
    Polynomial poly;
    std::string origin;
};

inline bool contains_any(const Polynomial& p, const std::set<Symbol, SymbolNameLess>& set) {
    for (const Symbol& s : p.symbols())
        if (set.count(s) > 0) return true;
    return false;
}

/// Splits p into one polynomial per power pattern of the universal symbols
/// (the universal factors themselves are divided out).
inline std::vector<Polynomial> split_universal(const Polynomial& p,
                                               const std::set<Symbol, SymbolNameLess>& universals) {
    std::map<Monomial, Polynomial, MonomialLess> groups;
    for (const auto& [m, c] : p.terms()) {
        Monomial upart;
        Monomial rest;
        for (const auto& [s, e] : m.factors()) {
            if (universals.count(s) > 0)
                upart = upart * Monomial::var(s, e);
            else
                rest = rest * Monomial::var(s, e);
        }
        groups[upart].add_term(rest, c);
    }
    std::vector<Polynomial> out;
    for (auto& [u, g] : groups) out.push_back(std::move(g));
    return out;
}

/// True when p is a single term that is a unit times a monomial over
/// `allowed` symbols only.
inline bool is_unit_monomial_over(const Polynomial& p,
                                  const std::set<Symbol, SymbolNameLess>& allowed) {
    if (p.term_count() != 1) return false;
    for (const auto& [s, e] : p.terms().begin()->first.factors())
        if (allowed.count(s) == 0) return false;
    return true;
}

/// Divides out the common polynomial factor living purely in universal
/// symbols (e.g. 1 - beta^2 after reducing the boost factor). Such a
/// factor is a nonzero function of the boost parameter, so removing it
/// preserves the solution set. Terms are grouped by their non-universal
/// monomial part; the gcd of the per-group universal polynomials divides
/// the whole equation.
inline Polynomial strip_universal_content(const Polynomial& p,
                                          const std::set<Symbol, SymbolNameLess>& universals) {
    if (p.is_zero() || universals.empty()) return p;
    std::map<Monomial, Polynomial, MonomialLess> groups;
    for (const auto& [m, c] : p.terms()) {
        Monomial upart;
        Monomial rest;
        for (const auto& [s, e] : m.factors()) {
            if (universals.count(s) > 0)
                upart = upart * Monomial::var(s, e);
            else
                rest = rest * Monomial::var(s, e);
        }
        groups[rest].add_term(upart, c);
    }
    Polynomial g;
    for (const auto& [rest, u] : groups) g = Polynomial::gcd(g, u);
    if (g.is_zero() || g.is_constant()) return p;
    return Polynomial::divide_exact(p, g);
}

} // namespace detail

/// Runs the staged solver; see the file comment for the strategy.
inline SolveResult solve_constraints(const ConstraintSystem& cs, const SolverOptions& opt) {
    SolveResult out;
    std::vector<detail::WorkEq> eqs;
    for (const ConstraintEquation& e : cs.equations())
        eqs.push_back({e.id, e.lhs.num(), e.origin});

    for (const auto& [s, value] : opt.prebound) {
        out.bindings.emplace(s, value);
        out.trace.push_back({"prebound", 0, s.name() + " = " + to_string(value)});
    }

    std::set<Symbol, SymbolNameLess> multiplier_set(opt.multiplier_unknowns.begin(),
                                                    opt.multiplier_unknowns.end());
    // Universal symbols are indeterminates of the ambient function field,
    // hence nonzero; they may be divided by exactly like assumed-nonzero
    // symbols.
    std::set<Symbol, SymbolNameLess> divisible = opt.assumed_nonzero;
    divisible.insert(opt.universals.begin(), opt.universals.end());

    auto substitute_bindings = [&](const Polynomial& p) -> Polynomial {
        std::map<Symbol, Scalar, SymbolNameLess> map;
        for (const Symbol& s : p.symbols()) {
            auto it = out.bindings.find(s);
            if (it != out.bindings.end()) map.emplace(s, it->second);
        }
        if (map.empty()) return p;
        return Scalar(p).substitute(map).num();
    };

    auto bind = [&](Symbol s, Scalar value, const char* action, int eq_id) {
        // Resolve through existing bindings so values only reference live
        // symbols; later bindings are closed over at the end.
        std::map<Symbol, Scalar, SymbolNameLess> map(out.bindings.begin(), out.bindings.end());
        value = value.substitute(map);
        out.bindings.emplace(s, value);
        out.trace.push_back({action, eq_id, s.name() + " = " + to_string(value)});
    };

    bool contradiction = false;
    for (int round = 0; round < 64 && !contradiction; ++round) {
        bool changed = false;

        // Stage 1: normalize, strip, dedup, detect contradictions.
        std::vector<detail::WorkEq> next;
        for (detail::WorkEq& e : eqs) {
            Polynomial p = substitute_bindings(e.poly);
            p = strip_nonzero_factors(normalize_equation(p), divisible);
            p = normalize_equation(detail::strip_universal_content(p, opt.universals));
            if (p.is_zero()) continue;
            if (p.is_constant()) {
                out.failure = "equation " + std::to_string(e.id) + " [" + e.origin +
                              "] reduces to a nonzero constant";
                contradiction = true;
                break;
            }
            bool dup = false;
            for (const detail::WorkEq& seen : next)
                if (seen.poly == p) dup = true;
            if (!dup) next.push_back({e.id, p, e.origin});
        }
        eqs = std::move(next);
        if (contradiction) break;

        // Stage 2: universalize multiplier-free equations.
        std::vector<detail::WorkEq> expanded;
        for (const detail::WorkEq& e : eqs) {
            bool has_multiplier = detail::contains_any(e.poly, multiplier_set);
            bool has_universal = detail::contains_any(e.poly, opt.universals);
            bool gamma_with_beta =
                e.poly.contains(sym::gamma()) && opt.universals.count(sym::beta()) > 0;
            if (has_multiplier || (!has_universal && !gamma_with_beta)) {
                expanded.push_back(e);
                continue;
            }
            std::vector<Polynomial> parts;
            if (gamma_with_beta)
                for (const Polynomial& part : e.poly.coefficients_in(sym::gamma()))
                    parts.push_back(part);
            else
                parts.push_back(e.poly);
            std::vector<Polynomial> pieces;
            for (const Polynomial& part : parts)
                for (Polynomial& piece : detail::split_universal(part, opt.universals))
                    pieces.push_back(std::move(piece));
            if (pieces.size() == 1 && pieces.front() == e.poly) {
                expanded.push_back(e);
                continue;
            }
            for (Polynomial& piece : pieces)
                if (!piece.is_zero()) expanded.push_back({e.id, std::move(piece), e.origin});
            changed = true;
        }
        eqs = std::move(expanded);
        if (changed) continue; // re-normalize the split pieces first

        // Stage 3: forced zeros from single-term equations; lower-degree
        // witnesses are preferred so the simplest source is cited.
        std::vector<std::tuple<unsigned int, int, Symbol>> candidates;
        for (const detail::WorkEq& e : eqs) {
            if (e.poly.term_count() != 1) continue;
            const Monomial& m = e.poly.leading_monomial();
            Symbol lone;
            bool eligible = true;
            for (const auto& [s, ex] : m.factors()) {
                if (divisible.count(s) > 0) continue; // nonzero factor, divided away
                if (lone.valid() && !(lone == s)) {
                    eligible = false;
                    break;
                }
                lone = s;
            }
            if (eligible && lone.valid())
                candidates.emplace_back(m.total_degree(), e.id, lone);
        }
        std::sort(candidates.begin(), candidates.end(),
                  [](const auto& a, const auto& b) {
                      if (std::get<0>(a) != std::get<0>(b)) return std::get<0>(a) < std::get<0>(b);
                      return std::get<1>(a) < std::get<1>(b);
                  });
        for (const auto& [deg, id, s] : candidates) {
            if (out.bindings.count(s) > 0) continue;
            bind(s, Scalar(0), "forced-zero", id);
            out.forced_zero.push_back(s);
            changed = true;
        }
        if (changed) continue;

        // Stage 4a: eliminate coefficient unknowns in the given order.
        auto try_linear = [&](Symbol s, const char* action, bool allow_open_multipliers) {
            for (const detail::WorkEq& e : eqs) {
                if (e.poly.degree_in(s) != 1) continue;
                std::vector<Polynomial> cs_in = e.poly.coefficients_in(s);
                if (!detail::is_unit_monomial_over(cs_in[1], divisible)) continue;
                Scalar value = -Scalar(cs_in[0]) / Scalar(cs_in[1]);
                std::map<Symbol, Scalar, SymbolNameLess> map(out.bindings.begin(),
                                                             out.bindings.end());
                value = value.substitute(map);
                if (!allow_open_multipliers) {
                    bool open = false;
                    for (const Symbol& other : value.symbols())
                        if (multiplier_set.count(other) > 0 && out.bindings.count(other) == 0)
                            open = true;
                    if (open) continue;
                }
                bind(s, value, action, e.id);
                return true;
            }
            return false;
        };

        for (const Symbol& s : opt.eliminate) {
            if (out.bindings.count(s) > 0) continue;
            if (try_linear(s, "linear-solve", false)) {
                changed = true;
                break;
            }
        }
        if (changed) continue;

        // Stage 4b: multiplier exponents, closed values first.
        for (bool allow_open : {false, true}) {
            for (const Symbol& s : opt.multiplier_unknowns) {
                if (out.bindings.count(s) > 0) continue;
                if (try_linear(s, "multiplier-solve", allow_open)) {
                    changed = true;
                    break;
                }
            }
            if (changed) break;
        }
        if (!changed) break;
    }

    // Back-substitution closure: binding values may reference symbols bound
    // later in the run; iterate substitution to the (acyclic) fixpoint.
    for (int pass = 0; pass < 16; ++pass) {
        bool moved = false;
        std::map<Symbol, Scalar, SymbolNameLess> map(out.bindings.begin(), out.bindings.end());
        for (auto& [s, value] : out.bindings) {
            Scalar next = value.substitute(map);
            if (!(next == value)) {
                value = next;
                moved = true;
            }
        }
        if (!moved) break;
        COVWAVE_REQUIRE(pass < 15, "cyclic bindings in solver closure");
    }

    for (const detail::WorkEq& e : eqs)
        out.residual.push_back({e.id, Scalar(e.poly), e.origin});
    if (contradiction)
        out.satisfiable = false;
    else if (!out.residual.empty()) {
        out.satisfiable = false;
        out.failure = "equations remain unsatisfied after solving";
    }
    return out;
}

/// Multiplier extraction on top of solve_constraints. The prefactor is one:
/// chaining two boosts multiplies prefactors, so a frame-independent
/// prefactor must be idempotent, hence unity. Exponents the system leaves
/// unconstrained stay symbolic and are listed as free parameters.
struct MultiplierSolution {
    bool satisfiable = true;
    ExpLinearMultiplier multiplier;
    std::vector<Symbol> free_parameters;
    SolveResult detail;
};

inline MultiplierSolution solve_multiplier(const ConstraintSystem& cs, const SolverOptions& opt) {
    MultiplierSolution out;
    out.detail = solve_constraints(cs, opt);
    out.satisfiable = out.detail.satisfiable;
    out.multiplier.prefactor = Scalar(1);
    for (int mu = 0; mu <= 3; ++mu) {
        Symbol lam = sym::lam(mu);
        bool declared = std::find(opt.multiplier_unknowns.begin(), opt.multiplier_unknowns.end(),
                                  lam) != opt.multiplier_unknowns.end();
        auto it = out.detail.bindings.find(lam);
        if (it != out.detail.bindings.end())
            out.multiplier.lambda[static_cast<std::size_t>(mu)] = it->second;
        else if (declared) {
            out.multiplier.lambda[static_cast<std::size_t>(mu)] = Scalar::variable(lam);
            out.free_parameters.push_back(lam);
        }
    }
    return out;
}

} // namespace covwave

#endif // COVWAVE_SOLVE_HPP
