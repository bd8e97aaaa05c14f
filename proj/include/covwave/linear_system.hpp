// SPDX-FileCopyrightText: 2026 covwave contributors
// SPDX-License-Identifier: Apache-2.0

/// @file linear_system.hpp
/// @brief Exact Gauss-Jordan elimination for linear symbol systems.
///
/// Solves finite systems that are linear in a chosen list of unknown
/// symbols with coefficients in Q(i, sqrt2). The reduced row echelon form
/// is computed exactly; since the RREF of a system is unique for a given
/// column order, two systems have the same solution space if and only if
/// their nonzero RREF rows agree, which the rotation stability check uses
/// directly. Pivot unknowns come out expressed in the free unknowns.

#ifndef COVWAVE_LINEAR_SYSTEM_HPP
#define COVWAVE_LINEAR_SYSTEM_HPP

#include "covwave/scalar.hpp"

#include <map>
#include <string>
#include <vector>

namespace covwave {

/// Solution of a linear system over the listed unknowns.
struct LinearSolution {
    bool consistent = true;
    std::vector<Symbol> unknowns;     ///< column order used
    std::vector<Symbol> free_symbols; ///< non-pivot unknowns
    /// pivot unknown -> expression in the free unknowns
    std::map<Symbol, Scalar, SymbolNameLess> pivot_values;
    /// nonzero reduced rows, one entry per unknown plus the constant column
    std::vector<std::vector<Coeff>> reduced_rows;
    std::size_t rank = 0;
};

/// Reduces equations (each polynomial = 0, linear in `unknowns`, with
/// coefficients free of the unknowns) to reduced row echelon form.
/// Throws DomainError if an equation is nonlinear in the unknowns or has
/// a coefficient outside Q(i, sqrt2).
inline LinearSolution solve_linear(const std::vector<Polynomial>& equations,
                                   const std::vector<Symbol>& unknowns) {
    std::map<Symbol, std::size_t, SymbolNameLess> column;
    for (std::size_t j = 0; j < unknowns.size(); ++j) column.emplace(unknowns[j], j);
    const std::size_t ncols = unknowns.size() + 1; // + constant column

    std::vector<std::vector<Coeff>> rows;
    for (const Polynomial& eq : equations) {
        std::vector<Coeff> row(ncols, Coeff::zero());
        for (const auto& [m, c] : eq.terms()) {
            if (m.is_unit()) {
                row[unknowns.size()] += c;
                continue;
            }
            const auto& factors = m.factors();
            if (factors.size() != 1 || factors[0].second != 1 ||
                column.find(factors[0].first) == column.end())
                throw DomainError("equation is not linear in the declared unknowns: " +
                                  to_string(eq));
            row[column.at(factors[0].first)] += c;
        }
        rows.push_back(std::move(row));
    }

    // Gauss-Jordan: for each column in order, find a pivot row, scale to 1,
    // clear the column everywhere else.
    std::size_t pivot_row = 0;
    std::vector<std::size_t> pivot_col_of_row;
    for (std::size_t col = 0; col < unknowns.size() && pivot_row < rows.size(); ++col) {
        std::size_t sel = pivot_row;
        while (sel < rows.size() && rows[sel][col].is_zero()) ++sel;
        if (sel == rows.size()) continue;
        std::swap(rows[pivot_row], rows[sel]);
        Coeff inv = rows[pivot_row][col].inverse();
        for (Coeff& entry : rows[pivot_row]) entry *= inv;
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (r == pivot_row || rows[r][col].is_zero()) continue;
            Coeff factor = rows[r][col];
            for (std::size_t j = 0; j < ncols; ++j)
                rows[r][j] = rows[r][j] - factor * rows[pivot_row][j];
        }
        pivot_col_of_row.push_back(col);
        ++pivot_row;
    }

    LinearSolution out;
    out.unknowns = unknowns;
    out.rank = pivot_row;

    // Rows below the pivots are all-zero in the unknown columns; a nonzero
    // constant there means the system is inconsistent.
    for (std::size_t r = pivot_row; r < rows.size(); ++r)
        if (!rows[r][unknowns.size()].is_zero()) out.consistent = false;

    std::vector<bool> is_pivot(unknowns.size(), false);
    for (std::size_t c : pivot_col_of_row) is_pivot[c] = true;
    for (std::size_t j = 0; j < unknowns.size(); ++j)
        if (!is_pivot[j]) out.free_symbols.push_back(unknowns[j]);

    for (std::size_t r = 0; r < pivot_row; ++r) {
        out.reduced_rows.push_back(rows[r]);
        std::size_t pc = pivot_col_of_row[r];
        // x_pc = -constant - sum_{free j} coeff_j x_j
        Polynomial value = Polynomial::constant(-rows[r][unknowns.size()]);
        for (std::size_t j = 0; j < unknowns.size(); ++j) {
            if (j == pc || rows[r][j].is_zero()) continue;
            value += Polynomial::term(Monomial::var(unknowns[j]), -rows[r][j]);
        }
        out.pivot_values.emplace(unknowns[pc], Scalar(value));
    }
    return out;
}

/// Solution spaces are equal iff the reduced rows coincide (same column
/// order assumed); RREF uniqueness makes this a complete check.
inline bool same_solution_space(const LinearSolution& a, const LinearSolution& b) {
    return a.unknowns == b.unknowns && a.consistent == b.consistent &&
           a.reduced_rows == b.reduced_rows;
}

} // namespace covwave

#endif // COVWAVE_LINEAR_SYSTEM_HPP
