// SPDX-FileCopyrightText: 2026 covwave contributors
// SPDX-License-Identifier: Apache-2.0

/// @file test_checks.cpp
/// @brief Boost-covariance residuals, dispersion measurement, the
/// large-c limit, multiplier phase comparison, squared-operator
/// residuals, and their CSV serialization.

#include "covwave/lab/checks.hpp"
#include "covwave/lab/csv.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <sstream>

using namespace covwave::lab;
using covwave::DomainError;
using covwave::InternalError;

namespace {

Grid1D standard_grid() { return Grid1D(32.0 * pi, 1024); }

/// Window tuned so the boosted wave number gamma m v / hbar sits exactly
/// on the lattice (mode 100 of 1024).
Grid1D boosted_window(const PhysicalParams& p) {
    const double beta = p.v / p.c;
    const double gamma = 1.0 / std::sqrt(1.0 - beta * beta);
    const double k = gamma * p.m * p.v / p.hbar;
    return Grid1D(2.0 * pi * 100.0 / k, 1024);
}

WaveState constant_state(const Grid1D& g, Complex value) {
    return WaveState(g, std::vector<Complex>(g.size(), value));
}

std::size_t count_lines(const std::string& s) {
    std::size_t n = 0;
    for (char c : s)
        if (c == '\n') ++n;
    return n;
}

} // namespace

TEST_CASE("galilean boost check validates the multiplier construction", "[lab][boost]") {
    const Grid1D g = standard_grid();
    SECTION("moving gaussian at v = 1") {
        PhysicalParams p;
        p.v = 1.0;
        const WaveState packet = make_gaussian(g, 1.0, 0.5 * g.length());
        const BoostCheckReport r =
            boost_check(Equation::schrodinger, packet, p, BoostKind::galilean);
        CHECK(r.equation == Equation::schrodinger);
        CHECK(r.boost == BoostKind::galilean);
        CHECK(r.t_final == 1.0);
        CHECK(r.max_residual < 1e-9);
        CHECK(r.l2_discrepancy < 1e-12);
        CHECK_FALSE(r.plane_wave.has_value());
    }
    SECTION("constant potential only adds a phase") {
        PhysicalParams p;
        p.v = 1.0;
        p.V = 0.7;
        const WaveState packet = make_gaussian(g, 1.0, 0.5 * g.length());
        const BoostCheckReport r =
            boost_check(Equation::schrodinger, packet, p, BoostKind::galilean);
        CHECK(r.max_residual < 1e-8);
        CHECK(r.l2_discrepancy < 1e-12);
    }
    SECTION("zero boost collapses to the rest-frame field") {
        PhysicalParams p;
        const BoostCheckReport r = boost_check(
            Equation::schrodinger, make_gaussian(g, 1.0, 0.5 * g.length()), p,
            BoostKind::galilean);
        CHECK(r.max_residual < 1e-9);
        CHECK(r.l2_discrepancy < 1e-12);
    }
    SECTION("rejections") {
        PhysicalParams p;
        p.v = 1.0;
        CHECK_THROWS_AS(
            boost_check(Equation::schrodinger, make_mode(g, 16), p, BoostKind::galilean),
            DomainError);
        PhysicalParams off = p;
        off.v = 0.013; // m v / hbar off the lattice (spacing 1/16)
        CHECK_THROWS_AS(boost_check(Equation::schrodinger,
                                    make_gaussian(g, 1.0, 0.5 * g.length()), off,
                                    BoostKind::galilean),
                        DomainError);
        CHECK_THROWS_AS(
            boost_check(Equation::schrodinger, make_gaussian(g, 1.0, 0.5), p,
                        BoostKind::galilean),
            DomainError); // support touches the periodic seam
        CHECK_THROWS_AS(boost_check(Equation::schrodinger,
                                    make_gaussian(g, 1.0, 0.5 * g.length()), p,
                                    BoostKind::lorentz),
                        DomainError);
        CHECK_THROWS_AS(
            boost_check(Equation::klein_gordon, constant_state(g, 1.0), p,
                        BoostKind::lorentz),
            DomainError);
    }
}

TEST_CASE("lorentz boost of the rest frame yields the predicted plane wave",
          "[lab][boost]") {
    PhysicalParams p;
    p.c = 10.0;
    p.v = 3.0; // beta = 0.3
    SECTION("beta = 0.3 readings") {
        const Grid1D g = boosted_window(p);
        const BoostCheckReport r =
            boost_check(Equation::lcse, constant_state(g, Complex(0.6, 0.8)), p,
                        BoostKind::lorentz);
        CHECK(r.max_residual < 1e-8);
        CHECK(r.l2_discrepancy < 1e-12);
        REQUIRE(r.plane_wave.has_value());
        const double gamma = 1.0 / std::sqrt(1.0 - 0.09);
        const double omega = (gamma - 1.0) * 100.0;
        const double k = gamma * 3.0;
        CHECK_THAT(r.plane_wave->omega_analytic, Catch::Matchers::WithinRel(omega, 1e-13));
        CHECK_THAT(r.plane_wave->k_analytic, Catch::Matchers::WithinRel(k, 1e-13));
        CHECK(std::abs(r.plane_wave->omega_measured - omega) < 1e-10);
        CHECK(std::abs(r.plane_wave->k_measured - k) < 1e-10);
    }
    SECTION("zero boost is the identity") {
        PhysicalParams rest = p;
        rest.v = 0.0;
        const Grid1D g = standard_grid();
        const BoostCheckReport r =
            boost_check(Equation::lcse, constant_state(g, 1.0), rest, BoostKind::lorentz);
        CHECK(r.max_residual < 1e-10);
        CHECK(r.l2_discrepancy < 1e-13);
        REQUIRE(r.plane_wave.has_value());
        CHECK(std::abs(r.plane_wave->omega_measured) < 1e-13);
        CHECK(std::abs(r.plane_wave->k_measured) < 1e-13);
    }
    SECTION("rejections") {
        const Grid1D g = boosted_window(p);
        WaveState uneven = constant_state(g, 1.0);
        uneven.values[5] += 0.5;
        CHECK_THROWS_AS(boost_check(Equation::lcse, uneven, p, BoostKind::lorentz),
                        DomainError);
        CHECK_THROWS_AS(
            boost_check(Equation::lcse, constant_state(standard_grid(), 1.0), p,
                        BoostKind::lorentz),
            DomainError); // window not tuned to gamma m v / hbar
        PhysicalParams pot = p;
        pot.V = 0.5;
        CHECK_THROWS_AS(
            boost_check(Equation::lcse, constant_state(g, 1.0), pot, BoostKind::lorentz),
            InternalError);
        PhysicalParams fast = p;
        fast.v = 11.0;
        CHECK_THROWS_AS(
            boost_check(Equation::lcse, constant_state(g, 1.0), fast, BoostKind::lorentz),
            InternalError);
    }
}

TEST_CASE("dispersion measurement recovers the closed-form frequencies",
          "[lab][dispersion]") {
    const Grid1D g = standard_grid();
    PhysicalParams p;
    SECTION("first-order parabola") {
        const std::vector<DispersionRow> rows =
            measure_dispersion(Equation::schrodinger, p, g, {1.0, 2.0, 4.0});
        REQUIRE(rows.size() == 3);
        const double expected[3] = {0.5, 2.0, 8.0};
        for (std::size_t i = 0; i < rows.size(); ++i) {
            CHECK(rows[i].branch == "single");
            CHECK_THAT(rows[i].omega_analytic,
                       Catch::Matchers::WithinAbs(expected[i], 1e-14));
            CHECK_THAT(rows[i].omega_measured,
                       Catch::Matchers::WithinAbs(expected[i], 1e-12));
            CHECK(rows[i].error < 1e-12);
        }
    }
    SECTION("lcse branch pair at k = 0 and k = 1") {
        const std::vector<DispersionRow> rows =
            measure_dispersion(Equation::lcse, p, g, {0.0, 1.0});
        REQUIRE(rows.size() == 4);
        CHECK(rows[0].branch == "particle");
        CHECK(std::abs(rows[0].omega_measured) < 1e-10); // error column is |omega| here
        CHECK(rows[0].error == std::abs(rows[0].omega_measured));
        CHECK(rows[1].branch == "antiparticle");
        CHECK(std::abs(rows[1].omega_measured - (-200.0)) < 1e-10);
        const double particle = 100.0 * (std::sqrt(1.01) - 1.0);
        const double antiparticle = -100.0 * (std::sqrt(1.01) + 1.0);
        CHECK_THAT(rows[2].omega_measured, Catch::Matchers::WithinRel(particle, 1e-12));
        CHECK_THAT(rows[3].omega_measured, Catch::Matchers::WithinRel(antiparticle, 1e-12));
        CHECK(rows[2].error < 1e-12);
        CHECK(rows[3].error < 1e-12);
    }
    SECTION("klein-gordon rest energy") {
        const std::vector<DispersionRow> rows =
            measure_dispersion(Equation::klein_gordon, p, g, {0.0, 1.0});
        REQUIRE(rows.size() == 4);
        CHECK_THAT(rows[0].omega_measured, Catch::Matchers::WithinRel(100.0, 1e-12));
        CHECK_THAT(rows[1].omega_measured, Catch::Matchers::WithinRel(-100.0, 1e-12));
        CHECK_THAT(rows[2].omega_measured,
                   Catch::Matchers::WithinRel(std::sqrt(10100.0), 1e-12));
        CHECK_THAT(rows[3].omega_measured,
                   Catch::Matchers::WithinRel(-std::sqrt(10100.0), 1e-12));
    }
    SECTION("off-lattice wave numbers are rejected") {
        CHECK_THROWS_AS(measure_dispersion(Equation::schrodinger, p, g, {0.03}),
                        DomainError);
    }
}

TEST_CASE("the large-c study converges to the first-order evolution at second order",
          "[lab][nrlimit]") {
    const Grid1D g = standard_grid();
    const WaveState packet = make_gaussian(g, 2.0, 0.5 * g.length(), 1.0);
    PhysicalParams p;
    const std::vector<double> cs = {10.0, 20.0, 40.0, 80.0};
    const NrLimitReport r = nr_limit_study(cs, packet, p, 1.0);
    SECTION("errors fall at slope -2") {
        REQUIRE(r.rows.size() == 4);
        for (std::size_t i = 1; i < r.rows.size(); ++i)
            CHECK(r.rows[i].l2_error < r.rows[i - 1].l2_error);
        CHECK(r.slope > -2.2);
        CHECK(r.slope < -1.8);
    }
    SECTION("repeat runs are bit-identical") {
        const NrLimitReport again = nr_limit_study(cs, packet, p, 1.0);
        REQUIRE(again.rows.size() == r.rows.size());
        for (std::size_t i = 0; i < r.rows.size(); ++i) {
            CHECK(again.rows[i].c == r.rows[i].c);
            CHECK(again.rows[i].l2_error == r.rows[i].l2_error);
        }
        CHECK(again.slope == r.slope);
    }
    SECTION("guards") {
        CHECK_THROWS_AS(nr_limit_study({10.0}, packet, p, 1.0), InternalError);
        CHECK_THROWS_AS(nr_limit_study({20.0, 10.0}, packet, p, 1.0), InternalError);
        const WaveState second = particle_branch_init(Equation::lcse, packet, p);
        CHECK_THROWS_AS(nr_limit_study(cs, second, p, 1.0), InternalError);
    }
}

TEST_CASE("multiplier phase gap shrinks as beta squared", "[lab][multiplier]") {
    PhysicalParams p;
    p.v = 1.0;
    const double x_max = 5.0, t_max = 1.0;
    const double beta = 0.05;
    const double gap = multiplier_phase_gap(p, beta, x_max, t_max, 21);
    SECTION("max sits at the far corner of the sample box") {
        const double c = p.v / beta;
        const double gamma = 1.0 / std::sqrt(1.0 - beta * beta);
        const double lorentz = (gamma - 1.0) * c * c * t_max + gamma * p.v * x_max;
        const double galilean = p.v * p.v * t_max / 2.0 + p.v * x_max;
        CHECK_THAT(gap, Catch::Matchers::WithinRel(lorentz - galilean, 1e-12));
    }
    SECTION("quartering under beta -> beta / 2") {
        const double half = multiplier_phase_gap(p, beta / 2.0, x_max, t_max, 21);
        CHECK(gap / half > 3.9);
        CHECK(gap / half < 4.1);
        // Leading coefficient: (3/8) v^2 t_max + (1/2) v x_max = 2.875.
        CHECK_THAT(gap / (beta * beta), Catch::Matchers::WithinRel(2.875, 5e-3));
    }
    SECTION("guards") {
        CHECK_THROWS_AS(multiplier_phase_gap(p, 1.5, x_max, t_max, 21), InternalError);
        CHECK_THROWS_AS(multiplier_phase_gap(p, beta, x_max, t_max, 1), InternalError);
        PhysicalParams rest = p;
        rest.v = 0.0;
        CHECK_THROWS_AS(multiplier_phase_gap(rest, beta, x_max, t_max, 21), InternalError);
    }
}

TEST_CASE("squared first-order operator annihilates evolved solutions",
          "[lab][fourthorder]") {
    const Grid1D g = standard_grid();
    PhysicalParams p;
    SECTION("free gaussian") {
        const WaveState packet = make_gaussian(g, 1.5, 0.5 * g.length(), 1.0);
        const FourthOrderReport r = fourth_order_residual(packet, p, 1.0);
        REQUIRE(r.times.size() == 5);
        REQUIRE(r.residuals.size() == 5);
        CHECK(r.times.front() == Catch::Approx(0.2));
        CHECK(r.times.back() == Catch::Approx(1.0));
        for (double res : r.residuals) CHECK(res < 5e-9);
        CHECK(r.max_residual < 5e-9);
    }
    SECTION("constant potential") {
        PhysicalParams pv = p;
        pv.V = 0.5;
        const WaveState packet = make_gaussian(g, 1.5, 0.5 * g.length(), 1.0);
        CHECK(fourth_order_residual(packet, pv, 1.0).max_residual < 5e-9);
    }
    SECTION("plane-wave eigenmode sits at the method noise floor") {
        // The annihilation is exact per mode; what remains is sample
        // rounding amplified by the nested 1/h difference weights.
        CHECK(fourth_order_residual(make_mode(g, 16), p, 1.0).max_residual < 5e-9);
    }
    SECTION("guards") {
        const WaveState second =
            particle_branch_init(Equation::lcse, make_mode(g, 16), p);
        CHECK_THROWS_AS(fourth_order_residual(second, p, 1.0), InternalError);
    }
}

TEST_CASE("position-dependent potential leaves the predicted first-derivative gap",
          "[lab][fourthorder]") {
    const Grid1D g = standard_grid();
    PhysicalParams p;
    const MismatchReport r = cosine_mismatch_check(g, p);
    CHECK(r.max_error < 1e-8);
    CHECK(r.mismatch_scale > 0.5); // the gap itself is order one, not noise
    CHECK_THROWS_AS(cosine_mismatch_check(Grid1D(10.0, 64), p), InternalError);
}

TEST_CASE("csv serialization is stable and round-trips doubles", "[lab][csv]") {
    SECTION("format_double") {
        CHECK(format_double(0.5) == "0.5");
        CHECK(format_double(-200.0) == "-200");
        CHECK(format_double(1.0 / 3.0) == "0.33333333333333331");
        for (double x : {pi, std::sqrt(2.0), 1e-17, -0.0, 0.49875621120890268})
            CHECK(std::stod(format_double(x)) == x);
    }
    SECTION("dispersion table") {
        const Grid1D g = standard_grid();
        PhysicalParams p;
        const std::vector<DispersionRow> rows =
            measure_dispersion(Equation::lcse, p, g, {0.0, 1.0});
        const std::string csv = dispersion_csv(rows);
        CHECK(csv.rfind("equation,branch,k,omega_measured,omega_analytic,error\n", 0) == 0);
        CHECK(count_lines(csv) == 5); // header + four rows
        CHECK(csv.find("lcse,particle,0,") != std::string::npos);
        CHECK(csv.find("lcse,antiparticle,") != std::string::npos);
        // Field-by-field round trip of the first data row.
        std::istringstream in(csv);
        std::string line;
        std::getline(in, line);
        std::getline(in, line);
        std::istringstream fields(line);
        std::string cell;
        std::getline(fields, cell, ',');
        CHECK(cell == "lcse");
        std::getline(fields, cell, ',');
        CHECK(cell == "particle");
        std::getline(fields, cell, ',');
        CHECK(std::stod(cell) == rows[0].k);
        std::getline(fields, cell, ',');
        CHECK(std::stod(cell) == rows[0].omega_measured);
        std::getline(fields, cell, ',');
        CHECK(std::stod(cell) == rows[0].omega_analytic);
        std::getline(fields, cell, ',');
        CHECK(std::stod(cell) == rows[0].error);
        // Determinism.
        CHECK(dispersion_csv(measure_dispersion(Equation::lcse, p, g, {0.0, 1.0})) == csv);
    }
    SECTION("convergence table") {
        const Grid1D g = standard_grid();
        const WaveState packet = make_gaussian(g, 2.0, 0.5 * g.length(), 1.0);
        PhysicalParams p;
        const NrLimitReport r = nr_limit_study({10.0, 20.0}, packet, p, 1.0);
        const std::string csv = nr_limit_csv(r);
        CHECK(csv.rfind("c,l2_error\n", 0) == 0);
        CHECK(count_lines(csv) == 3);
        CHECK(csv.find("\n10,") != std::string::npos);
        CHECK(csv.find("\n20,") != std::string::npos);
    }
}
