// SPDX-FileCopyrightText: 2026 covwave contributors
// SPDX-License-Identifier: Apache-2.0

/// @file test_evolve.cpp
/// @brief Grid, transform, and exact per-mode evolution of the three
/// derived equations, pinned against closed-form mode oracles.

#include "covwave/lab/residual.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

using namespace covwave::lab;
using covwave::DomainError;
using covwave::InternalError;

namespace {

Grid1D standard_grid() { return Grid1D(32.0 * pi, 1024); }

/// Deterministic pseudo-random complex samples.
std::vector<Complex> noise(std::size_t n, unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    std::vector<Complex> out(n);
    for (Complex& x : out) x = Complex(dist(rng), dist(rng));
    return out;
}

double max_diff(const std::vector<Complex>& a, const std::vector<Complex>& b) {
    REQUIRE(a.size() == b.size());
    double m = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) m = std::max(m, std::abs(a[j] - b[j]));
    return m;
}

} // namespace

TEST_CASE("grid exposes lattice wave numbers and rejects off-lattice k", "[lab][grid]") {
    const Grid1D g(2.0 * pi, 8);
    SECTION("points and spacing") {
        CHECK(g.spacing() == Catch::Approx(pi / 4.0));
        CHECK(g.point(0) == 0.0);
        CHECK(g.point(4) == Catch::Approx(pi));
    }
    SECTION("transform-ordered mode numbers") {
        CHECK(g.mode_number(0) == 0);
        CHECK(g.mode_number(3) == 3);
        CHECK(g.mode_number(4) == -4);
        CHECK(g.mode_number(7) == -1);
        CHECK(g.wavenumber(1) == Catch::Approx(1.0));
        CHECK(g.wavenumber(7) == Catch::Approx(-1.0));
    }
    SECTION("lattice membership") {
        REQUIRE(g.lattice_mode(3.0).has_value());
        CHECK(*g.lattice_mode(3.0) == 3);
        CHECK(*g.lattice_mode(-2.0) == -2);
        CHECK_FALSE(g.lattice_mode(0.5).has_value());
        CHECK_FALSE(g.lattice_mode(4.0).has_value()); // Nyquist edge excluded
        CHECK(g.mode_index(-1) == 7);
        CHECK_THROWS_AS(g.mode_index(4), InternalError);
    }
    SECTION("construction guards") {
        CHECK_THROWS_AS(Grid1D(0.0, 8), InternalError);
        CHECK_THROWS_AS(Grid1D(1.0, 12), InternalError);
    }
}

TEST_CASE("fft round-trips and matches transform oracles", "[lab][fft]") {
    SECTION("impulse transforms to a flat spectrum") {
        std::vector<Complex> a(16, Complex(0.0, 0.0));
        a[0] = Complex(1.0, 0.0);
        const std::vector<Complex> f = fft(a);
        for (const Complex& x : f) CHECK(std::abs(x - Complex(1.0, 0.0)) < 1e-15);
    }
    SECTION("a pure mode transforms to a single bin") {
        const Grid1D g(2.0 * pi, 32);
        const WaveState s = make_mode(g, 5);
        const std::vector<Complex> f = fft(s.values);
        for (std::size_t j = 0; j < f.size(); ++j) {
            const double expected = j == g.mode_index(5) ? 32.0 : 0.0;
            CHECK(std::abs(f[j] - expected) < 1e-12);
        }
    }
    SECTION("ifft inverts fft on noise") {
        const std::vector<Complex> a = noise(256, 7);
        CHECK(max_diff(ifft(fft(a)), a) < 1e-14);
    }
    SECTION("spectral derivatives of closed forms") {
        const Grid1D g(2.0 * pi, 64);
        std::vector<Complex> cosx(g.size()), msinx(g.size());
        for (std::size_t j = 0; j < g.size(); ++j) {
            cosx[j] = std::cos(g.point(j));
            msinx[j] = -std::sin(g.point(j));
        }
        CHECK(max_diff(spectral_derivative(g, cosx, 1), msinx) < 1e-13);
        const WaveState m = make_mode(g, 2);
        std::vector<Complex> scaled(m.values);
        for (Complex& x : scaled) x *= -4.0;
        CHECK(max_diff(spectral_derivative(g, m.values, 2), scaled) < 1e-12);
    }
}

TEST_CASE("wave states carry normalized packets and eigenmodes", "[lab][state]") {
    const Grid1D g = standard_grid();
    SECTION("gaussian is unit norm and lattice-checked") {
        const WaveState s = make_gaussian(g, 1.0, 0.5 * g.length());
        CHECK_FALSE(s.second_order());
        CHECK(s.norm() == Catch::Approx(1.0).margin(1e-12));
        CHECK_THROWS_AS(make_gaussian(g, 1.0, 0.5 * g.length(), 0.03), InternalError);
        CHECK_NOTHROW(make_gaussian(g, 1.0, 0.5 * g.length(), 0.0625));
    }
    SECTION("sample-count guards") {
        CHECK_THROWS_AS(WaveState(g, std::vector<Complex>(3)), InternalError);
        CHECK_THROWS_AS(
            WaveState(g, std::vector<Complex>(g.size()), std::vector<Complex>(5), 0.0),
            InternalError);
    }
}

TEST_CASE("mode frequencies match closed forms", "[lab][evolve]") {
    PhysicalParams p; // m = hbar = 1, c = 10
    SECTION("first-order omega") {
        CHECK(first_order_omega(2.0, p) == 2.0);
        PhysicalParams pv = p;
        pv.V = 3.0;
        CHECK(first_order_omega(2.0, pv) == 5.0);
    }
    SECTION("lcse roots at k = 1, c = 10") {
        const BranchRoots r = second_order_roots(Equation::lcse, 1.0, p);
        CHECK_THAT(r.particle,
                   Catch::Matchers::WithinRel(100.0 * (std::sqrt(1.01) - 1.0), 1e-12));
        // Vieta: sum = -2mc^2/hbar, product = -k^2 c^2.
        CHECK_THAT(r.particle + r.antiparticle, Catch::Matchers::WithinRel(-200.0, 1e-13));
        CHECK_THAT(r.particle * r.antiparticle, Catch::Matchers::WithinRel(-100.0, 1e-13));
    }
    SECTION("lcse roots at k = 0 are exact") {
        const BranchRoots r = second_order_roots(Equation::lcse, 0.0, p);
        CHECK(r.particle == 0.0);
        CHECK_THAT(r.antiparticle, Catch::Matchers::WithinAbs(-200.0, 1e-12));
    }
    SECTION("klein-gordon rest energy and k = 1") {
        const BranchRoots r0 = second_order_roots(Equation::klein_gordon, 0.0, p);
        CHECK(r0.particle == Catch::Approx(100.0));
        CHECK(r0.antiparticle == Catch::Approx(-100.0));
        const BranchRoots r1 = second_order_roots(Equation::klein_gordon, 1.0, p);
        CHECK_THAT(r1.particle, Catch::Matchers::WithinRel(std::sqrt(10100.0), 1e-14));
    }
    SECTION("degenerate discriminant is a domain error") {
        PhysicalParams bad = p;
        bad.c = 1.0;
        bad.V = -1.0;
        CHECK_THROWS_AS(second_order_roots(Equation::lcse, 0.0, bad), DomainError);
    }
    SECTION("klein-gordon carries no potential slot") {
        PhysicalParams bad = p;
        bad.V = 0.5;
        CHECK_THROWS_AS(second_order_roots(Equation::klein_gordon, 1.0, bad), InternalError);
    }
}

TEST_CASE("evolution advances single modes by the exact phase", "[lab][evolve]") {
    const Grid1D g = standard_grid();
    PhysicalParams p;
    SECTION("first-order mode k = 2 over unit time") {
        const WaveState s = make_mode(g, 32); // k = 32/16 = 2
        const WaveState out = evolve(Equation::schrodinger, s, p, 1.0);
        const Complex phase = std::exp(Complex(0.0, -2.0));
        double err = 0.0;
        for (std::size_t j = 0; j < g.size(); ++j)
            err = std::max(err, std::abs(out.values[j] - phase * s.values[j]));
        CHECK(err < 1e-13);
    }
    SECTION("constant potential shifts the zero mode") {
        PhysicalParams pv = p;
        pv.V = 3.0;
        const WaveState s = make_mode(g, 0);
        const WaveState out = evolve(Equation::schrodinger, s, pv, 1.0);
        CHECK(std::abs(out.values[0] - std::exp(Complex(0.0, -3.0))) < 1e-13);
    }
    SECTION("lcse particle branch k = 1") {
        const WaveState s = particle_branch_init(Equation::lcse, make_mode(g, 16), p);
        const double omega = 100.0 * (std::sqrt(1.01) - 1.0);
        const WaveState out = evolve(Equation::lcse, s, p, 1.0);
        const Complex phase = std::exp(Complex(0.0, -omega));
        double err = 0.0;
        for (std::size_t j = 0; j < g.size(); ++j)
            err = std::max(err, std::abs(out.values[j] - phase * s.values[j]));
        CHECK(err < 1e-12);
    }
    SECTION("state-kind guards") {
        const WaveState first = make_mode(g, 1);
        CHECK_THROWS_AS(evolve(Equation::lcse, first, p, 1.0), InternalError);
        const WaveState second = particle_branch_init(Equation::klein_gordon, first, p);
        CHECK_THROWS_AS(evolve(Equation::schrodinger, second, p, 1.0), InternalError);
        CHECK_THROWS_AS(particle_branch_init(Equation::schrodinger, first, p), InternalError);
    }
}

TEST_CASE("two-branch decomposition reconstructs arbitrary mode data", "[lab][evolve]") {
    const Grid1D g(2.0 * pi, 64);
    PhysicalParams p;
    const long n = 2;
    const Complex u(0.8, 0.3), w(-0.2, 0.5);
    const WaveState mode = make_mode(g, n);
    std::vector<Complex> values(g.size()), derivative(g.size());
    for (std::size_t j = 0; j < g.size(); ++j) {
        values[j] = u * mode.values[j];
        derivative[j] = w * mode.values[j];
    }
    const WaveState s(g, values, derivative, 0.0);
    // Independent oracle: solve the quadratic with the textbook formula
    // and project the data onto the two branches by hand.
    const double k = g.wavenumber(g.mode_index(n));
    const double a = 1.0 / (2.0 * p.c * p.c);
    const double d = k * k / 2.0;
    const double wp = (-1.0 + std::sqrt(1.0 + 4.0 * a * d)) / (2.0 * a);
    const double wm = (-1.0 - std::sqrt(1.0 + 4.0 * a * d)) / (2.0 * a);
    const Complex ap = (Complex(0.0, 1.0) * w - wm * u) / (wp - wm);
    const Complex am = u - ap;
    const double t = 0.4;
    const Complex ut = ap * std::exp(Complex(0.0, -wp * t)) + am * std::exp(Complex(0.0, -wm * t));
    const Complex wt = Complex(0.0, -wp) * ap * std::exp(Complex(0.0, -wp * t)) +
                       Complex(0.0, -wm) * am * std::exp(Complex(0.0, -wm * t));
    const WaveState out = evolve(Equation::lcse, s, p, t);
    double verr = 0.0, derr = 0.0;
    for (std::size_t j = 0; j < g.size(); ++j) {
        verr = std::max(verr, std::abs(out.values[j] - ut * mode.values[j]));
        derr = std::max(derr, std::abs(out.derivative[j] - wt * mode.values[j]));
    }
    CHECK(verr < 1e-12);
    CHECK(derr < 1e-10); // derivative amplitudes carry the large antiparticle omega
    // Reconstruction at t = 0 is the identity.
    const WaveState zero = evolve(Equation::lcse, s, p, 0.0);
    CHECK(max_diff(zero.values, s.values) < 1e-13);
    CHECK(max_diff(zero.derivative, s.derivative) < 1e-11);
}

TEST_CASE("evolution conserves norm and reverses exactly", "[lab][evolve]") {
    const Grid1D g = standard_grid();
    PhysicalParams p;
    const WaveState packet = make_gaussian(g, 2.0, 0.5 * g.length(), 1.0);
    SECTION("first-order norm conservation") {
        const double n0 = packet.norm();
        for (double t : {0.3, 1.0, 4.7, -2.0}) {
            const WaveState out = evolve(Equation::schrodinger, packet, p, t);
            CHECK(std::abs(out.norm() - n0) / n0 < 1e-12);
        }
    }
    SECTION("time reversal for all three equations") {
        const WaveState back1 = evolve(Equation::schrodinger,
                                       evolve(Equation::schrodinger, packet, p, 0.7), p, 0.0);
        CHECK(max_diff(back1.values, packet.values) < 1e-12);
        for (Equation eq : {Equation::lcse, Equation::klein_gordon}) {
            const WaveState seeded = particle_branch_init(eq, packet, p);
            const WaveState back = evolve(eq, evolve(eq, seeded, p, 0.7), p, 0.0);
            CHECK(max_diff(back.values, seeded.values) < 1e-12);
            CHECK(max_diff(back.derivative, seeded.derivative) < 1e-10);
        }
    }
    SECTION("zero-interval evolution is the identity") {
        const WaveState out = evolve(Equation::schrodinger, packet, p, 0.0);
        CHECK(max_diff(out.values, packet.values) < 1e-14);
    }
}

TEST_CASE("time differences converge at fourth order", "[lab][residual]") {
    const Grid1D g(2.0 * pi, 8);
    const Complex base(0.7, -0.2);
    const Sampler f = [&](double t) {
        return std::vector<Complex>(g.size(), base * std::exp(Complex(0.0, -2.0 * t)));
    };
    const double t0 = 0.3;
    const Complex exact1 = Complex(0.0, -2.0) * base * std::exp(Complex(0.0, -2.0 * t0));
    const Complex exact2 = -4.0 * base * std::exp(Complex(0.0, -2.0 * t0));
    SECTION("first derivative halving ratio") {
        const double e1 = std::abs(fd_time1(f, t0, 0.05)[0] - exact1);
        const double e2 = std::abs(fd_time1(f, t0, 0.025)[0] - exact1);
        CHECK(e1 / e2 > 12.0);
        CHECK(e1 / e2 < 20.0);
    }
    SECTION("second derivative halving ratio") {
        const double e1 = std::abs(fd_time2(f, t0, 0.05)[0] - exact2);
        const double e2 = std::abs(fd_time2(f, t0, 0.025)[0] - exact2);
        CHECK(e1 / e2 > 12.0);
        CHECK(e1 / e2 < 20.0);
    }
    SECTION("residual operator inherits the order") {
        const Grid1D big(32.0 * pi, 256);
        PhysicalParams p;
        const Sampler wave = [&](double t) {
            std::vector<Complex> out(big.size());
            for (std::size_t j = 0; j < big.size(); ++j)
                out[j] = std::exp(Complex(0.0, 2.0 * big.point(j) - 2.0 * t));
            return out;
        };
        const double r1 = max_abs(equation_residual(Equation::schrodinger, big, wave, p, 0.5, 0.02));
        const double r2 = max_abs(equation_residual(Equation::schrodinger, big, wave, p, 0.5, 0.01));
        CHECK(r1 / r2 > 12.0);
        CHECK(r1 / r2 < 20.0);
    }
}

TEST_CASE("equation residuals accept solutions and flag impostors", "[lab][residual]") {
    const Grid1D g = standard_grid();
    PhysicalParams p;
    const double k = 2.0;
    auto plane = [&](double omega) {
        return Sampler([&g, k, omega](double t) {
            std::vector<Complex> out(g.size());
            for (std::size_t j = 0; j < g.size(); ++j)
                out[j] = std::exp(Complex(0.0, k * g.point(j) - omega * t));
            return out;
        });
    };
    SECTION("first-order plane wave") {
        CHECK(max_abs(equation_residual(Equation::schrodinger, g, plane(2.0), p, 0.5, 1e-3)) <
              1e-10);
        // Doubling the frequency leaves a defect of |hbar * delta omega| = 2.
        CHECK(max_abs(equation_residual(Equation::schrodinger, g, plane(4.0), p, 0.5, 1e-3)) >
              1.0);
    }
    SECTION("lcse plane wave on either branch") {
        const BranchRoots r = second_order_roots(Equation::lcse, k, p);
        CHECK(max_abs(equation_residual(Equation::lcse, g, plane(r.particle), p, 0.5, 1e-3)) <
              1e-8);
        // omega ~ 200 amplifies the h^4 omega^5 truncation term; shrink h.
        CHECK(max_abs(equation_residual(Equation::lcse, g, plane(r.antiparticle), p, 0.5,
                                        1e-4)) < 1e-5);
        CHECK(max_abs(equation_residual(Equation::lcse, g, plane(1.0), p, 0.5, 1e-3)) > 0.1);
    }
    SECTION("klein-gordon plane wave, both signs") {
        const double omega = std::sqrt(10000.0 + 100.0 * k * k);
        CHECK(max_abs(equation_residual(Equation::klein_gordon, g, plane(omega), p, 0.5,
                                        1e-3)) < 1e-4 * omega * omega);
        CHECK(max_abs(equation_residual(Equation::klein_gordon, g, plane(-omega), p, 0.5,
                                        1e-3)) < 1e-4 * omega * omega);
        // At half the frequency the defect is |k^2 + m^2c^2/hbar^2 - omega^2/4c^2| ~ 78.
        CHECK(max_abs(equation_residual(Equation::klein_gordon, g, plane(0.5 * omega), p, 0.5,
                                        1e-3)) > 50.0);
    }
}
