// SPDX-FileCopyrightText: 2026 covwave contributors
// SPDX-License-Identifier: Apache-2.0

/// @file plane_wave_dispersion.cpp
/// @brief Minimal tour of the numerical layer: evolve single modes under
/// each equation and read their frequencies back from the phase history,
/// comparing against the closed-form dispersion laws.

#include <covwave/lab/checks.hpp>
#include <covwave/lab/csv.hpp>

#include <iostream>

int main() {
    using namespace covwave::lab;

    // A periodic window whose lattice contains the integer wave numbers.
    const Grid1D grid(32.0 * pi, 1024);
    PhysicalParams p;
    p.c = 10.0; // m = hbar = 1, V = 0

    std::cout << "window: length " << format_double(grid.length()) << ", "
              << grid.size() << " points\n\n";
    std::cout << "equation          branch        k    measured            "
                 "analytic            rel. error\n";

    for (Equation eq : {Equation::schrodinger, Equation::klein_gordon, Equation::lcse}) {
        const std::vector<DispersionRow> rows =
            measure_dispersion(eq, p, grid, {1.0, 2.0, 4.0});
        for (const DispersionRow& r : rows) {
            std::printf("%-17s %-12s %3g  %-19.12g %-19.12g %.3g\n",
                        to_string(r.equation).c_str(), r.branch.c_str(), r.k,
                        r.omega_measured, r.omega_analytic, r.error);
        }
    }

    // The same rows serialize to CSV for plotting.
    const std::vector<DispersionRow> sample =
        measure_dispersion(Equation::schrodinger, p, grid, {1.0, 2.0, 4.0, 8.0});
    std::cout << "\ncsv form:\n" << dispersion_csv(sample);
    return 0;
}
