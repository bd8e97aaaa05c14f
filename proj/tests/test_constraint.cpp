// SPDX-FileCopyrightText: 2026 covwave contributors
// SPDX-License-Identifier: Apache-2.0

/// @file test_constraint.cpp
/// @brief Covariance constraint extraction, exact linear reduction, and
/// the rotation analysis of the general operator.

#include "covwave/constraint.hpp"
#include "covwave/linear_system.hpp"
#include "covwave/parse.hpp"
#include "covwave/rotation.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace covwave;

namespace {

Scalar sc(const std::string& text) { return parse_scalar(text); }

/// True when some equation of the system has exactly this normalized lhs.
bool system_contains(const ConstraintSystem& cs, const std::string& text) {
    Polynomial want = normalize_equation(sc(text).num());
    for (const ConstraintEquation& e : cs.equations())
        if (e.lhs.num() == want) return true;
    return false;
}

LinearPDE laplacian(const Scalar& coeff) {
    LinearPDE op;
    for (int j = 1; j <= 3; ++j) op.add_term(DerivMono::d(j, 2), coeff);
    return op;
}

/// The first-order wave operator family the boost derivations start from.
LinearPDE base_operator(bool with_second_time) {
    LinearPDE op = laplacian(sc("Bbar"));
    op.add_term(DerivMono::d(0), sc("Cbar"));
    op.add_term(DerivMono::unit(), Scalar::variable(sym::f()));
    if (with_second_time) op.add_term(DerivMono::d(0, 2), sc("Abar"));
    return op;
}

std::set<Symbol, SymbolNameLess> names(std::initializer_list<const char*> list) {
    std::set<Symbol, SymbolNameLess> out;
    for (const char* n : list) out.insert(sym::by_name(n));
    return out;
}

} // namespace

TEST_CASE("equation normalization fixes content and sign") {
    CHECK(normalize_equation(sc("-2*Abar*v").num()) == sc("Abar*v").num());
    CHECK(normalize_equation(sc("4*x1 - 6*x2").num()) == sc("2*x1 - 3*x2").num());
    CHECK(normalize_equation(sc("-i*m").num()) == sc("i*m").num());
    CHECK(normalize_equation(Polynomial()).is_zero());
}

TEST_CASE("nonzero factor stripping divides only declared symbols") {
    auto nz = names({"Bbar"});
    CHECK(strip_nonzero_factors(sc("2*Bbar^2*lam1 - Bbar*Cbar*v").num(), nz) ==
          sc("2*Bbar*lam1 - Cbar*v").num());
    // Abar is not declared nonzero, so it must survive.
    CHECK(strip_nonzero_factors(sc("Abar*Bbar*v").num(), nz) == sc("Abar*v").num());
    CHECK(strip_nonzero_factors(sc("Bbar + Cbar").num(), nz) == sc("Bbar + Cbar").num());
}

TEST_CASE("an operator is trivially covariant against itself") {
    LinearPDE op = base_operator(false);
    ConstraintSystem cs =
        covariance_constraints(op, op, Proportionality::cross_ratio, names({"Bbar"}));
    CHECK(cs.empty());
    REQUIRE(cs.factor_value().has_value());
    CHECK(*cs.factor_value() == Scalar(1));
}

TEST_CASE("covariance against the zero operator is rejected") {
    CHECK_THROWS_AS(covariance_constraints(base_operator(false), LinearPDE::zero()),
                    DomainError);
}

TEST_CASE("galilean covariance of the first-order operator yields the two brackets") {
    LinearPDE op = base_operator(false);
    // Boost exponents only along time and the boost axis; the transverse
    // exponents are handled in the generic-solver test.
    ExpLinearMultiplier g;
    g.lambda[0] = Scalar::variable(sym::lam(0));
    g.lambda[1] = Scalar::variable(sym::lam(1));
    LinearPDE boosted =
        boost_operator(op, FrameTransform::galilean(Scalar::variable(sym::v())), g);

    ConstraintSystem cs =
        covariance_constraints(op, boosted, Proportionality::cross_ratio, names({"Bbar", "Cbar"}));
    CHECK(system_contains(cs, "2*Bbar*lam1 - Cbar*v"));
    CHECK(system_contains(cs, "Bbar*lam1^2 + Cbar*lam0 - Cbar*v*lam1"));
    CHECK(cs.size() == 2);
    REQUIRE(cs.factor_value().has_value());
    CHECK(*cs.factor_value() == Scalar(1));
    REQUIRE(cs.reference().has_value());
    CHECK(*cs.reference() == DerivMono::d(1, 2));
}

TEST_CASE("a second time derivative survives into the constraint system") {
    LinearPDE op = base_operator(true);
    LinearPDE boosted = boost_operator(
        op, FrameTransform::galilean(Scalar::variable(sym::v())), ExpLinearMultiplier::generic());
    ConstraintSystem cs =
        covariance_constraints(op, boosted, Proportionality::cross_ratio, names({"Bbar", "Cbar"}));

    // Reference skips the leading slot (coefficient Abar is not known
    // nonzero) and lands on the Laplacian slot with factor (Bbar+Abar v^2)/Bbar.
    REQUIRE(cs.reference().has_value());
    CHECK(*cs.reference() == DerivMono::d(1, 2));
    CHECK(*cs.factor_value() == sc("(Bbar + Abar*v^2)/Bbar"));

    // The mixed time-space slot and the pure second-time slot.
    CHECK(system_contains(cs, "Abar*v"));
    CHECK(system_contains(cs, "Abar^2*v^2"));
    bool mixed_found = false;
    for (const ConstraintEquation& e : cs.equations())
        if (e.origin == "mono 1100") {
            mixed_found = true;
            CHECK(e.lhs.num() == sc("Abar*v").num());
        }
    CHECK(mixed_found);
}

TEST_CASE("lorentz covariance of the second-order operator") {
    LinearPDE op;
    op.add_term(DerivMono::d(0, 2), sc("A"));
    op = op + laplacian(sc("B"));
    op.add_term(DerivMono::d(0), sc("C"));
    op.add_term(DerivMono::unit(), Scalar::variable(sym::f()));

    LinearPDE boosted = boost_operator(
        op, FrameTransform::lorentz(Scalar::variable(sym::beta())), ExpLinearMultiplier::generic());
    ConstraintSystem cs =
        covariance_constraints(op, boosted, Proportionality::cross_ratio, names({"B", "C"}));

    // Mixed slot demands A + B = 0 once the nonzero boost factor is divided out.
    CHECK(system_contains(cs, "A*beta + B*beta"));
    // Leading time slot compares gamma^2(A + beta^2 B) against A.
    CHECK(system_contains(cs, "A^2*beta^2 - B^2*beta^2"));
}

TEST_CASE("exact linear reduction") {
    Symbol x = sym::by_name("x1");
    Symbol y = sym::by_name("x2");

    SECTION("unique solution") {
        std::vector<Polynomial> eqs = {sc("x1 + x2 - 2").num(), sc("x1 - x2").num()};
        LinearSolution sol = solve_linear(eqs, {x, y});
        REQUIRE(sol.consistent);
        CHECK(sol.rank == 2);
        CHECK(sol.free_symbols.empty());
        CHECK(sol.pivot_values.at(x) == Scalar(1));
        CHECK(sol.pivot_values.at(y) == Scalar(1));
    }
    SECTION("inconsistent system is detected") {
        std::vector<Polynomial> eqs = {sc("x1 + 1").num(), sc("x1 + 2").num()};
        CHECK_FALSE(solve_linear(eqs, {x}).consistent);
    }
    SECTION("free symbols survive") {
        std::vector<Polynomial> eqs = {sc("x1 - 2*x2").num()};
        LinearSolution sol = solve_linear(eqs, {x, y});
        REQUIRE(sol.consistent);
        CHECK(sol.free_symbols == std::vector<Symbol>{y});
        CHECK(sol.pivot_values.at(x) == sc("2*x2"));
    }
    SECTION("nonlinear input is rejected") {
        std::vector<Polynomial> eqs = {sc("x1^2 - 1").num()};
        CHECK_THROWS_AS(solve_linear(eqs, {x}), DomainError);
    }
    SECTION("solution-space comparison through reduced rows") {
        std::vector<Polynomial> a = {sc("x1 + x2").num()};
        std::vector<Polynomial> b = {sc("3*x1 + 3*x2").num()};
        std::vector<Polynomial> c = {sc("x1 - x2").num()};
        CHECK(same_solution_space(solve_linear(a, {x, y}), solve_linear(b, {x, y})));
        CHECK_FALSE(same_solution_space(solve_linear(a, {x, y}), solve_linear(c, {x, y})));
    }
}

TEST_CASE("general operators enumerate every derivative slot") {
    LinearPDE op2 = general_operator(2);
    // 4 first-order + 10 second-order slots, potential aside.
    CHECK(op2.terms().size() == 14);
    CHECK(op2.coefficient(DerivMono::d(0) * DerivMono::d(1)) == sc("a01"));
    CHECK(op2.coefficient(DerivMono::d(2, 2)) == sc("a22"));
    CHECK(op2.coefficient(DerivMono::unit()) == Scalar::variable(sym::f()));

    // order 3 adds 20 cubic slots, order 4 adds 35 quartic slots
    CHECK(general_operator(3).terms().size() == 34);
    CHECK(general_operator(4).terms().size() == 69);
    CHECK(general_operator(4).coefficient(DerivMono::d(0, 2) * DerivMono::d(1, 2)) ==
          sc("a0011"));
}

TEST_CASE("rotation analysis at order 2") {
    RotationAnalysis an = rotation_constraints(2);
    REQUIRE(an.solution.consistent);

    // Survivors: one time-squared, one isotropic Laplacian, one first-order
    // time coefficient (descending-name column order).
    std::vector<Symbol> expect = {sym::by_name("b0"), sym::by_name("a11"), sym::by_name("a00")};
    CHECK(an.solution.free_symbols == expect);

    // Spatial diagonal entries all equal; every off-diagonal and every
    // first-order spatial coefficient vanishes.
    CHECK(an.solution.pivot_values.at(sym::by_name("a22")) == sc("a11"));
    CHECK(an.solution.pivot_values.at(sym::by_name("a33")) == sc("a11"));
    CHECK(an.solution.pivot_values.at(sym::by_name("a12")) == Scalar(0));
    CHECK(an.solution.pivot_values.at(sym::by_name("a01")) == Scalar(0));
    CHECK(an.solution.pivot_values.at(sym::by_name("b1")) == Scalar(0));
    CHECK(an.solution.pivot_values.at(sym::by_name("b3")) == Scalar(0));

    LinearPDE expect_reduced = laplacian(sc("Bbar"));
    expect_reduced.add_term(DerivMono::d(0, 2), sc("Abar"));
    expect_reduced.add_term(DerivMono::d(0), sc("Cbar"));
    expect_reduced.add_term(DerivMono::unit(), Scalar::variable(sym::f()));
    CHECK(an.reduced == expect_reduced);

    // Origins name the rotation and the slot they came from.
    REQUIRE_FALSE(an.system.empty());
    bool labeled = false;
    for (const ConstraintEquation& e : an.system.equations())
        if (e.origin.find("rotation") == 0 && e.origin.find("mono") != std::string::npos)
            labeled = true;
    CHECK(labeled);
}

TEST_CASE("rotation analysis at order 3 kills all spatial cubic terms") {
    RotationAnalysis an = rotation_constraints(3);
    REQUIRE(an.solution.consistent);

    std::vector<Symbol> expect = {sym::by_name("b0"), sym::by_name("a11"), sym::by_name("a011"),
                                  sym::by_name("a000"), sym::by_name("a00")};
    CHECK(an.solution.free_symbols == expect);

    // Pure and mixed spatial cubics vanish; the time-space block is isotropic.
    CHECK(an.solution.pivot_values.at(sym::by_name("a111")) == Scalar(0));
    CHECK(an.solution.pivot_values.at(sym::by_name("a123")) == Scalar(0));
    CHECK(an.solution.pivot_values.at(sym::by_name("a112")) == Scalar(0));
    CHECK(an.solution.pivot_values.at(sym::by_name("a001")) == Scalar(0));
    CHECK(an.solution.pivot_values.at(sym::by_name("a022")) == sc("a011"));
    CHECK(an.solution.pivot_values.at(sym::by_name("a033")) == sc("a011"));

    LinearPDE expect_reduced = laplacian(sc("B"));
    expect_reduced.add_term(DerivMono::d(0, 2), sc("Abar"));
    expect_reduced.add_term(DerivMono::d(0), sc("Cbar"));
    expect_reduced.add_term(DerivMono::d(0, 3), sc("atil"));
    for (int j = 1; j <= 3; ++j)
        expect_reduced.add_term(DerivMono::d(0) * DerivMono::d(j, 2), sc("bbar"));
    expect_reduced.add_term(DerivMono::unit(), Scalar::variable(sym::f()));
    CHECK(an.reduced == expect_reduced);
}

TEST_CASE("rotation analysis at order 4 recovers the squared Laplacian") {
    RotationAnalysis an = rotation_constraints(4);
    REQUIRE(an.solution.consistent);

    // The quartic survivors: pure time, isotropic quartic Laplacian and the
    // time-space square; the pair coefficients are locked to twice the pure
    // quartic one.
    CHECK(an.solution.pivot_values.at(sym::by_name("a2222")) == sc("a1111"));
    CHECK(an.solution.pivot_values.at(sym::by_name("a3333")) == sc("a1111"));
    CHECK(an.solution.pivot_values.at(sym::by_name("a1122")) == sc("2*a1111"));
    CHECK(an.solution.pivot_values.at(sym::by_name("a1133")) == sc("2*a1111"));
    CHECK(an.solution.pivot_values.at(sym::by_name("a2233")) == sc("2*a1111"));
    CHECK(an.solution.pivot_values.at(sym::by_name("a1112")) == Scalar(0));
    CHECK(an.solution.pivot_values.at(sym::by_name("a1123")) == Scalar(0));
    CHECK(an.solution.pivot_values.at(sym::by_name("a0123")) == Scalar(0));
    CHECK(an.solution.pivot_values.at(sym::by_name("a0001")) == Scalar(0));
    CHECK(an.solution.pivot_values.at(sym::by_name("a0022")) == sc("a0011"));

    // Quartic spatial block: Btil (d1^4 + d2^4 + d3^4 + 2 d1^2 d2^2 + ...)
    // equals Btil (d1^2 + d2^2 + d3^2)^2.
    CHECK(an.reduced.coefficient(DerivMono::d(1, 4)) == sc("Btil"));
    CHECK(an.reduced.coefficient(DerivMono::d(1, 2) * DerivMono::d(2, 2)) == sc("2*Btil"));
    CHECK(an.reduced.coefficient(DerivMono::d(0, 4)) == sc("Atil"));
    CHECK(an.reduced.coefficient(DerivMono::d(0, 2) * DerivMono::d(3, 2)) == sc("Ctil"));
    CHECK(an.reduced.coefficient(DerivMono::d(0) * DerivMono::d(2, 2)) == sc("bbar"));
    CHECK(an.reduced.coefficient(DerivMono::d(1, 3)) == Scalar(0));
    CHECK(an.reduced.coefficient(DerivMono::d(1, 2)) == sc("B"));
    CHECK(an.reduced.coefficient(DerivMono::d(0, 2)) == sc("Abar"));
}

TEST_CASE("enlarging the sampled rotation set changes nothing") {
    CHECK(rotation_set_stable(2));
    CHECK(rotation_set_stable(3));
    CHECK(rotation_set_stable(4));
}
