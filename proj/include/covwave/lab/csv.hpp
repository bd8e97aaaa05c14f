// SPDX-FileCopyrightText: 2026 covwave contributors
// SPDX-License-Identifier: Apache-2.0
#ifndef COVWAVE_LAB_CSV_HPP
#define COVWAVE_LAB_CSV_HPP

/// Text serialization of lab tables. Columns are documented here and
/// stable; floating-point values use %.17g so round-tripping a file
/// reproduces the doubles exactly and golden files diff cleanly.

#include "covwave/lab/checks.hpp"

#include <cstdio>
#include <string>

namespace covwave::lab {

/// Shortest decimal string that round-trips the double (17 significant digits).
inline std::string format_double(double x) {
    char buffer[40];
    std::snprintf(buffer, sizeof buffer, "%.17g", x);
    return buffer;
}

/// Columns: equation,branch,k,omega_measured,omega_analytic,error
/// (error is relative, or |omega_measured| when omega_analytic == 0).
inline std::string dispersion_csv(const std::vector<DispersionRow>& rows) {
    std::string out = "equation,branch,k,omega_measured,omega_analytic,error\n";
    for (const DispersionRow& r : rows) {
        out += to_string(r.equation);
        out += ',';
        out += r.branch;
        out += ',';
        out += format_double(r.k);
        out += ',';
        out += format_double(r.omega_measured);
        out += ',';
        out += format_double(r.omega_analytic);
        out += ',';
        out += format_double(r.error);
        out += '\n';
    }
    return out;
}

/// Columns: c,l2_error — relative L2 distance between the lcse and
/// first-order evolutions. The fitted log-log slope lives in the report
/// structure, not in the table.
inline std::string nr_limit_csv(const NrLimitReport& report) {
    std::string out = "c,l2_error\n";
    for (const NrLimitRow& r : report.rows) {
        out += format_double(r.c);
        out += ',';
        out += format_double(r.l2_error);
        out += '\n';
    }
    return out;
}

} // namespace covwave::lab

#endif // COVWAVE_LAB_CSV_HPP
