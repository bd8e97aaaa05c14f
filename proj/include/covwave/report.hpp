// SPDX-FileCopyrightText: 2026 covwave contributors
// SPDX-License-Identifier: Apache-2.0
#ifndef COVWAVE_REPORT_HPP
#define COVWAVE_REPORT_HPP

/// Structured derivation reports. A report records an entire derivation
/// chain: the isotropic operator family it started from, every solved or
/// forced coefficient with the constraint equations that justify it, the
/// frame-change multiplier, and the final operator with all overall
/// factors divided out. Rendering is fully deterministic so repeated runs
/// produce byte-identical text.

#include "covwave/linear_pde.hpp"
#include "covwave/multiplier.hpp"
#include "covwave/solve.hpp"

#include <map>
#include <string>
#include <vector>

namespace covwave {

/// One supported fact: a short label, a rendered statement, and the
/// equations of a named constraint system that back it.
struct ReportClaim {
    std::string label;
    std::string statement;
    std::string system;         ///< which constraint system the ids refer to
    std::vector<int> equations; ///< citing equation ids within that system
};

struct DerivationReport {
    std::string pipeline;
    std::string frame_note;
    LinearPDE family; ///< isotropic operator family before boosts
    /// Frame-covariance stage: solved coefficients and multiplier exponents.
    std::map<Symbol, Scalar, SymbolNameLess> bindings;
    /// Plane-wave stage: coefficient values fixed by the dispersion law.
    std::map<Symbol, Scalar, SymbolNameLess> dispersion_bindings;
    std::vector<ReportClaim> claims;
    std::vector<ReportClaim> flags;
    ExpLinearMultiplier multiplier_generic; ///< exponents in family coefficients
    ExpLinearMultiplier multiplier;         ///< exponents in physical parameters
    std::vector<Symbol> multiplier_free;
    LinearPDE final_equation;
    std::string final_text;
    std::string verdict;
    bool ok = true;
    std::vector<std::string> trace;
};

/// The equations a solver run used to bind `s`, in trace order.
inline std::vector<int> cited_equations(const SolveResult& result, Symbol s) {
    std::vector<int> out;
    const std::string prefix = std::string(s.name()) + " =";
    for (const SolveStep& step : result.trace)
        if (step.eq_id > 0 && step.detail.rfind(prefix, 0) == 0) out.push_back(step.eq_id);
    return out;
}

/// "eq 3" / "eq 3, 7" / "eq 1-24" (consecutive runs are compressed).
inline std::string render_equation_ids(const std::vector<int>& ids) {
    if (ids.empty()) return "";
    std::string out = "eq ";
    std::size_t i = 0;
    while (i < ids.size()) {
        std::size_t j = i;
        while (j + 1 < ids.size() && ids[j + 1] == ids[j] + 1) ++j;
        if (i > 0) out += ", ";
        out += std::to_string(ids[i]);
        if (j > i + 1) out += "-" + std::to_string(ids[j]);
        else if (j == i + 1) out += ", " + std::to_string(ids[j]);
        i = j + 1;
    }
    return out;
}

inline std::string render_claim(const ReportClaim& c) {
    std::string out = c.label + ": " + c.statement + " [" + c.system;
    const std::string ids = render_equation_ids(c.equations);
    if (!ids.empty()) out += " " + ids;
    out += "]";
    return out;
}

inline std::string render_multiplier(const ExpLinearMultiplier& g) {
    std::string exponent;
    for (int mu = 0; mu <= 3; ++mu) {
        const Scalar& lam = g.lambda[static_cast<std::size_t>(mu)];
        if (lam.is_zero()) continue;
        if (!exponent.empty()) exponent += " + ";
        exponent += "(" + to_string(lam) + ")*x" + std::to_string(mu);
    }
    std::string out;
    if (!g.prefactor.is_one()) out += "(" + to_string(g.prefactor) + ")*";
    out += exponent.empty() ? "1" : "exp[" + exponent + "]";
    return out;
}

inline std::string render_text(const DerivationReport& r) {
    std::string out;
    out += "pipeline: " + r.pipeline + "\n";
    out += "frame: " + r.frame_note + "\n";
    out += "family: " + to_string(r.family) + " = 0\n";
    for (const std::string& line : r.trace) out += line + "\n";
    for (const ReportClaim& c : r.claims) out += "claim " + render_claim(c) + "\n";
    for (const ReportClaim& c : r.flags) out += "flag " + render_claim(c) + "\n";
    out += "multiplier: " + render_multiplier(r.multiplier) + "\n";
    if (!r.multiplier_free.empty()) {
        out += "multiplier free parameters:";
        for (const Symbol& s : r.multiplier_free) out += " " + std::string(s.name());
        out += "\n";
    }
    out += "final: " + r.final_text + "\n";
    out += "verdict: " + r.verdict + "\n";
    out += std::string("status: ") + (r.ok ? "ok" : "failed") + "\n";
    return out;
}

} // namespace covwave

#endif // COVWAVE_REPORT_HPP
