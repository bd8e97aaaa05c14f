// SPDX-FileCopyrightText: 2026 covwave contributors
// SPDX-License-Identifier: Apache-2.0
#ifndef COVWAVE_LAB_CHECKS_HPP
#define COVWAVE_LAB_CHECKS_HPP

/// Quantitative verification procedures for the derived equations:
/// boost-covariance residuals, dispersion measurement, the c -> infinity
/// limit, multiplier phase comparison, and squared-operator residuals.
/// Each check pits an analytically constructed field against independent
/// numerics (finite-difference residuals, direct spectral evolution), so
/// agreement is evidence, not bookkeeping.

#include "covwave/lab/residual.hpp"

#include <optional>
#include <string>
#include <vector>

namespace covwave::lab {

enum class BoostKind { galilean, lorentz };

inline std::string to_string(BoostKind b) {
    return b == BoostKind::galilean ? "galilean" : "lorentz";
}

/// Wave readings extracted from an evolved plane-wave solution.
struct PlaneWaveReading {
    double omega_measured = 0.0;
    double omega_analytic = 0.0;
    double k_measured = 0.0;
    double k_analytic = 0.0;
};

struct BoostCheckReport {
    Equation equation = Equation::schrodinger;
    BoostKind boost = BoostKind::galilean;
    double t_final = 0.0;
    /// max over sampled times of max|equation defect| / max|Psi|.
    double max_residual = 0.0;
    /// relative L2 distance at t_final between the multiplier-constructed
    /// field and direct spectral evolution of its t = 0 data.
    double l2_discrepancy = 0.0;
    std::optional<PlaneWaveReading> plane_wave;
};

namespace detail {

struct GaussianShape {
    double sigma = 0.0;
    double center = 0.0;
    Complex amplitude; ///< peak value, including any constant phase
};

/// Recovers (sigma, center, amplitude) of a Gaussian packet at rest from
/// its samples via moments of |Psi|^2, then validates the fit pointwise.
inline GaussianShape fit_gaussian(const WaveState& s) {
    const Grid1D& g = s.grid;
    double w = 0.0, mean = 0.0;
    for (std::size_t j = 0; j < g.size(); ++j) {
        const double q = std::norm(s.values[j]);
        w += q;
        mean += q * g.point(j);
    }
    COVWAVE_REQUIRE(w > 0.0, "packet must be nonzero");
    mean /= w;
    double var = 0.0;
    for (std::size_t j = 0; j < g.size(); ++j) {
        const double d = g.point(j) - mean;
        var += std::norm(s.values[j]) * d * d;
    }
    var /= w;
    GaussianShape shape;
    shape.sigma = std::sqrt(2.0 * var);
    shape.center = mean;
    std::size_t peak = 0;
    for (std::size_t j = 1; j < g.size(); ++j)
        if (std::abs(s.values[j]) > std::abs(s.values[peak])) peak = j;
    const double dpk = g.point(peak) - mean;
    shape.amplitude = s.values[peak] *
                      std::exp(dpk * dpk / (2.0 * shape.sigma * shape.sigma));
    for (std::size_t j = 0; j < g.size(); ++j) {
        const double d = g.point(j) - mean;
        const Complex model =
            shape.amplitude * std::exp(-d * d / (2.0 * shape.sigma * shape.sigma));
        if (std::abs(s.values[j] - model) > 1e-8 * std::abs(shape.amplitude))
            throw DomainError("boost check needs a Gaussian packet at rest; "
                              "the samples do not fit one");
    }
    return shape;
}

/// The analytic field must be negligible at the periodic seam x = 0 (== L)
/// for spectral treatment of the non-periodic closed form to be honest.
inline void require_contained(const Grid1D& g, const std::vector<Complex>& values,
                              double scale) {
    const std::size_t n = g.size();
    const std::size_t edge[6] = {0, 1, 2, n - 3, n - 2, n - 1};
    for (std::size_t j : edge)
        if (std::abs(values[j]) > 1e-10 * scale)
            throw DomainError("packet support reaches the periodic window edge; "
                              "choose a window containing the support plus the drift");
}

/// Least-squares slope of y against t.
inline double ls_slope(const std::vector<double>& t, const std::vector<double>& y) {
    COVWAVE_REQUIRE(t.size() == y.size() && t.size() >= 2, "slope fit needs >= 2 points");
    double tm = 0.0, ym = 0.0;
    for (std::size_t i = 0; i < t.size(); ++i) {
        tm += t[i];
        ym += y[i];
    }
    tm /= static_cast<double>(t.size());
    ym /= static_cast<double>(t.size());
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < t.size(); ++i) {
        num += (t[i] - tm) * (y[i] - ym);
        den += (t[i] - tm) * (t[i] - tm);
    }
    COVWAVE_REQUIRE(den > 0.0, "slope fit needs distinct abscissae");
    return num / den;
}

/// Maps an angle increment into (-pi, pi].
inline double wrap_angle(double d) {
    return d - 2.0 * pi * std::round(d / (2.0 * pi));
}

} // namespace detail

/// Boost-covariance check. Two scenarios have a closed-form oracle:
///  - (schrodinger, galilean): `packet` is a Gaussian at rest in the
///    boosted frame; the lab-frame field is multiplier x spreading
///    Gaussian evaluated along x - v t.
///  - (lcse, lorentz): `packet` is spatially constant in the rest frame;
///    the lab-frame field is the boosted-identity plane wave with
///    hbar k = gamma m v and hbar omega = (gamma - 1) m c^2.
/// Reports the finite-difference equation residual of the constructed
/// field and its L2 distance from direct spectral evolution.
inline BoostCheckReport boost_check(Equation eq, const WaveState& packet,
                                    const PhysicalParams& p, BoostKind boost,
                                    double t_final = 1.0, std::size_t n_times = 5,
                                    double h = 1e-3) {
    COVWAVE_REQUIRE(!packet.second_order() && packet.time == 0.0,
                    "boost check takes rest-frame data at t = 0");
    COVWAVE_REQUIRE(t_final > 0.0 && n_times >= 1, "need a positive check interval");
    const Grid1D grid = packet.grid;
    BoostCheckReport report;
    report.equation = eq;
    report.boost = boost;
    report.t_final = t_final;

    if (eq == Equation::schrodinger && boost == BoostKind::galilean) {
        const detail::GaussianShape shape = detail::fit_gaussian(packet);
        const double k0 = p.m * p.v / p.hbar;
        if (!grid.lattice_mode(k0))
            throw DomainError("boost momentum m v / hbar must sit on the wave-number "
                              "lattice of the window");
        const Sampler field = [&grid, &p, shape](double t) {
            // tau = 1 + i hbar t / (m sigma^2) spreads the packet; the
            // multiplier exp[(i/hbar)(m v^2 t / 2 + m v x')] converts the
            // rest-frame solution at x' = x - v t into a lab-frame one.
            const Complex tau(1.0, p.hbar * t / (p.m * shape.sigma * shape.sigma));
            const Complex spread = shape.amplitude / std::sqrt(tau);
            std::vector<Complex> out(grid.size());
            for (std::size_t j = 0; j < grid.size(); ++j) {
                const double xp = grid.point(j) - p.v * t;
                const double d = xp - shape.center;
                const Complex envelope =
                    spread * std::exp(-d * d / (2.0 * shape.sigma * shape.sigma * tau));
                const double phase =
                    (p.m * p.v * p.v * t / 2.0 + p.m * p.v * xp - p.V * t) / p.hbar;
                out[j] = envelope * std::exp(Complex(0.0, phase));
            }
            return out;
        };
        const double scale = std::abs(shape.amplitude);
        for (std::size_t i = 0; i < n_times; ++i) {
            const double t = t_final * static_cast<double>(i + 1) /
                             static_cast<double>(n_times);
            const std::vector<Complex> now = field(t);
            detail::require_contained(grid, now, scale);
            const double r = max_abs(equation_residual(eq, grid, field, p, t, h)) /
                             max_abs(now);
            report.max_residual = std::max(report.max_residual, r);
        }
        const WaveState start(grid, field(0.0));
        const WaveState direct = evolve(eq, start, p, t_final);
        const std::vector<Complex> constructed = field(t_final);
        double nrm = 0.0;
        for (const Complex& x : constructed) nrm += std::norm(x);
        nrm = std::sqrt(grid.spacing() * nrm);
        report.l2_discrepancy = l2_distance(grid, direct.values, constructed) / nrm;
        return report;
    }

    if (eq == Equation::lcse && boost == BoostKind::lorentz) {
        COVWAVE_REQUIRE(p.m > 0.0 && p.hbar > 0.0 && p.c > 0.0,
                        "m, hbar, c must be positive");
        COVWAVE_REQUIRE(std::abs(p.v) < p.c, "Lorentz boost needs |v| < c");
        COVWAVE_REQUIRE(p.V == 0.0,
                        "the rest-frame constant solves only the free equation");
        const Complex psi0 = packet.values[0];
        COVWAVE_REQUIRE(std::abs(psi0) > 0.0, "rest-frame amplitude must be nonzero");
        for (const Complex& x : packet.values)
            if (std::abs(x - psi0) > 1e-12 * std::abs(psi0))
                throw DomainError("the lcse rest-frame packet must be spatially constant");
        const double beta = p.v / p.c;
        const double gamma = 1.0 / std::sqrt(1.0 - beta * beta);
        const double k = gamma * p.m * p.v / p.hbar;
        const double omega = (gamma - 1.0) * p.m * p.c * p.c / p.hbar;
        if (!grid.lattice_mode(k))
            throw DomainError("gamma m v / hbar must sit on the wave-number lattice; "
                              "choose the window length accordingly");
        const Sampler field = [&grid, psi0, k, omega](double t) {
            std::vector<Complex> out(grid.size());
            for (std::size_t j = 0; j < grid.size(); ++j)
                out[j] = psi0 * std::exp(Complex(0.0, k * grid.point(j) - omega * t));
            return out;
        };
        for (std::size_t i = 0; i < n_times; ++i) {
            const double t = t_final * static_cast<double>(i + 1) /
                             static_cast<double>(n_times);
            const double r = max_abs(equation_residual(eq, grid, field, p, t, h)) /
                             std::abs(psi0);
            report.max_residual = std::max(report.max_residual, r);
        }
        std::vector<Complex> v0 = field(0.0);
        std::vector<Complex> dv0(v0.size());
        for (std::size_t j = 0; j < v0.size(); ++j)
            dv0[j] = Complex(0.0, -omega) * v0[j];
        const WaveState start(grid, std::move(v0), std::move(dv0), 0.0);
        const WaveState direct = evolve(eq, start, p, t_final);
        report.l2_discrepancy =
            l2_distance(grid, direct.values, field(t_final)) /
            (std::abs(psi0) * std::sqrt(grid.length()));
        // Read (omega, k) back from the evolved solution: omega from the
        // phase advance over a wrap-safe interval, k from the phase step
        // between neighbouring samples.
        const double dt = (pi / 4.0) / (std::abs(omega) + 1.0);
        const WaveState ea = evolve(eq, start, p, t_final - dt);
        PlaneWaveReading reading;
        reading.omega_analytic = omega;
        reading.k_analytic = k;
        reading.omega_measured =
            -std::arg(direct.values[0] / ea.values[0]) / dt;
        reading.k_measured =
            std::arg(direct.values[1] / direct.values[0]) / grid.spacing();
        report.plane_wave = reading;
        return report;
    }

    throw DomainError("no analytic boost scenario for " + to_string(eq) + " under a " +
                      to_string(boost) + " boost");
}

/// One dispersion measurement: an eigenmode is evolved and its frequency
/// read from the unwrapped phase slope of the mode coefficient.
struct DispersionRow {
    Equation equation = Equation::schrodinger;
    std::string branch; ///< "single", "particle", or "antiparticle"
    double k = 0.0;
    double omega_measured = 0.0;
    double omega_analytic = 0.0;
    /// |omega_m - omega_a| / |omega_a|, or |omega_m| when omega_a == 0.
    double error = 0.0;
};

namespace detail {

inline DispersionRow measure_one(Equation eq, const PhysicalParams& p, const Grid1D& grid,
                                 long n, std::string branch, double omega_analytic) {
    DispersionRow row;
    row.equation = eq;
    row.branch = std::move(branch);
    row.k = grid.wavenumber(grid.mode_index(n));
    row.omega_analytic = omega_analytic;
    WaveState state = make_mode(grid, n);
    if (eq != Equation::schrodinger) {
        std::vector<Complex> dv(state.values.size());
        for (std::size_t j = 0; j < dv.size(); ++j)
            dv[j] = Complex(0.0, -omega_analytic) * state.values[j];
        state = WaveState(grid, state.values, std::move(dv), 0.0);
    }
    const double dt = (pi / 4.0) / (std::abs(omega_analytic) + 1.0);
    std::vector<double> times, phases;
    double previous = 0.0;
    for (std::size_t i = 0; i < 5; ++i) {
        const double t = dt * static_cast<double>(i);
        const WaveState s = evolve(eq, state, p, t);
        const Complex coefficient =
            fft(s.values)[grid.mode_index(n)] / static_cast<double>(grid.size());
        const double raw = std::arg(coefficient);
        const double unwrapped = i == 0 ? raw : previous + wrap_angle(raw - previous);
        times.push_back(t);
        phases.push_back(unwrapped);
        previous = unwrapped;
    }
    row.omega_measured = -ls_slope(times, phases);
    row.error = omega_analytic != 0.0
                    ? std::abs(row.omega_measured - omega_analytic) / std::abs(omega_analytic)
                    : std::abs(row.omega_measured);
    return row;
}

} // namespace detail

/// Measures the dispersion relation on the given wave numbers (each must
/// sit on the grid lattice). Second-order equations produce a particle
/// and an antiparticle row per k, seeded by branch projection.
inline std::vector<DispersionRow> measure_dispersion(Equation eq, const PhysicalParams& p,
                                                     const Grid1D& grid,
                                                     const std::vector<double>& k_list) {
    std::vector<DispersionRow> rows;
    for (double k : k_list) {
        const std::optional<long> n = grid.lattice_mode(k);
        if (!n)
            throw DomainError("wave number does not sit on the grid lattice");
        if (eq == Equation::schrodinger) {
            rows.push_back(
                detail::measure_one(eq, p, grid, *n, "single", first_order_omega(k, p)));
        } else {
            const BranchRoots roots = second_order_roots(eq, k, p);
            rows.push_back(detail::measure_one(eq, p, grid, *n, "particle", roots.particle));
            rows.push_back(
                detail::measure_one(eq, p, grid, *n, "antiparticle", roots.antiparticle));
        }
    }
    return rows;
}

struct NrLimitRow {
    double c = 0.0;
    double l2_error = 0.0; ///< relative L2 distance lcse vs schrodinger at t_final
};

struct NrLimitReport {
    std::vector<NrLimitRow> rows;
    double slope = 0.0; ///< least-squares d log(error) / d log(c)
};

/// Evolves the same first-order packet under the first-order equation and
/// under the lcse (particle-branch projection) for each c, and fits the
/// decay rate of their L2 distance against c.
inline NrLimitReport nr_limit_study(const std::vector<double>& c_list,
                                    const WaveState& packet, const PhysicalParams& p,
                                    double t_final) {
    COVWAVE_REQUIRE(!packet.second_order(), "the study starts from a first-order packet");
    COVWAVE_REQUIRE(c_list.size() >= 2, "need at least two c values for a slope");
    for (std::size_t i = 0; i < c_list.size(); ++i) {
        COVWAVE_REQUIRE(c_list[i] > 0.0, "c must be positive");
        COVWAVE_REQUIRE(i == 0 || c_list[i] > c_list[i - 1], "c_list must be increasing");
    }
    const WaveState reference = evolve(Equation::schrodinger, packet, p, t_final);
    const double nrm = reference.norm();
    COVWAVE_REQUIRE(nrm > 0.0, "packet must be nonzero");
    NrLimitReport report;
    std::vector<double> logc, logerr;
    for (double c : c_list) {
        PhysicalParams pc = p;
        pc.c = c;
        const WaveState seeded = particle_branch_init(Equation::lcse, packet, pc);
        const WaveState relativistic = evolve(Equation::lcse, seeded, pc, t_final);
        const double err =
            l2_distance(packet.grid, relativistic.values, reference.values) / nrm;
        COVWAVE_REQUIRE(err > 0.0, "degenerate comparison");
        report.rows.push_back({c, err});
        logc.push_back(std::log(c));
        logerr.push_back(std::log(err));
    }
    report.slope = detail::ls_slope(logc, logerr);
    return report;
}

/// Max pointwise gap over [0, x_max] x [0, t_max] between the Galilean
/// multiplier exponent (m v^2 t / 2 + m v x)/hbar and its Lorentz
/// counterpart ((gamma - 1) m c^2 t + gamma m v x)/hbar, at fixed boost
/// speed v = p.v and c = v / beta (p.c is ignored). The gap shrinks as
/// beta^2.
inline double multiplier_phase_gap(const PhysicalParams& p, double beta, double x_max,
                                   double t_max, std::size_t samples) {
    COVWAVE_REQUIRE(p.v != 0.0, "phase comparison needs a nonzero boost speed");
    COVWAVE_REQUIRE(beta > 0.0 && beta < 1.0, "beta must lie in (0, 1)");
    COVWAVE_REQUIRE(samples >= 2, "need at least a 2 x 2 sample box");
    const double c = std::abs(p.v) / beta;
    const double gamma = 1.0 / std::sqrt(1.0 - beta * beta);
    double gap = 0.0;
    for (std::size_t a = 0; a < samples; ++a) {
        const double t = t_max * static_cast<double>(a) / static_cast<double>(samples - 1);
        for (std::size_t b = 0; b < samples; ++b) {
            const double x =
                x_max * static_cast<double>(b) / static_cast<double>(samples - 1);
            const double galilean = (p.m * p.v * p.v * t / 2.0 + p.m * p.v * x) / p.hbar;
            const double lorentz =
                ((gamma - 1.0) * p.m * c * c * t + gamma * p.m * p.v * x) / p.hbar;
            gap = std::max(gap, std::abs(lorentz - galilean));
        }
    }
    return gap;
}

struct FourthOrderReport {
    std::vector<double> times;
    std::vector<double> residuals; ///< max |L[L[Psi]]| / max |Psi| per time
    double max_residual = 0.0;
};

/// Applies the squared first-order operator to the exactly evolved packet
/// at sampled times. Solutions of the first-order equation must sit in
/// the kernel of the squared operator up to finite-difference error.
inline FourthOrderReport fourth_order_residual(const WaveState& packet,
                                               const PhysicalParams& p, double t_final,
                                               std::size_t n_times = 5, double h = 1e-3) {
    COVWAVE_REQUIRE(!packet.second_order() && packet.time == 0.0,
                    "takes a first-order packet at t = 0");
    COVWAVE_REQUIRE(t_final > 0.0 && n_times >= 1, "need a positive check interval");
    const Grid1D grid = packet.grid;
    const Sampler field = [&](double t) {
        return evolve(Equation::schrodinger, packet, p, t).values;
    };
    const PotentialFn constant = [&p](double) { return p.V; };
    FourthOrderReport report;
    for (std::size_t i = 0; i < n_times; ++i) {
        const double t =
            t_final * static_cast<double>(i + 1) / static_cast<double>(n_times);
        const double r = max_abs(apply_first_order_twice(grid, field, constant, p, t, h)) /
                         max_abs(field(t));
        report.times.push_back(t);
        report.residuals.push_back(r);
        report.max_residual = std::max(report.max_residual, r);
    }
    return report;
}

struct MismatchReport {
    /// |numeric mismatch - predicted first-derivative term| / max|Psi|.
    double max_error = 0.0;
    /// |predicted mismatch| / max|Psi| — shows the gap is genuinely nonzero.
    double mismatch_scale = 0.0;
};

/// With V(x) = cos x the squared first-order operator no longer matches
/// the constant-V fourth-order form: the difference, applied to a smooth
/// test field, must equal
///   -(hbar^2/m) V'(x) Psi_x - (hbar^2/2m) V''(x) Psi.
/// Both sides are computed independently (nested operator application vs
/// slot-by-slot expansion) and compared pointwise.
inline MismatchReport cosine_mismatch_check(const Grid1D& grid, const PhysicalParams& p,
                                            double h = 4e-3) {
    // Default h is larger than elsewhere: the second time difference
    // amplifies sample rounding by ~1/h^2, and the test field's time
    // dependence is slow enough that the h^4 truncation term stays far
    // below the noise floor.
    COVWAVE_REQUIRE(grid.lattice_mode(1.0).has_value(),
                    "window length must be a multiple of 2 pi for V = cos x");
    const double L = grid.length();
    // Smooth periodic test field: three drifting-phase Gaussian humps on
    // lattice carriers. It solves no equation on purpose — the mismatch
    // identity is an operator statement, valid on any smooth field.
    const Sampler field = [&grid, L](double t) {
        std::vector<Complex> out(grid.size());
        for (std::size_t j = 0; j < grid.size(); ++j) {
            const double x = grid.point(j);
            const double d1 = x - 0.45 * L;
            const double d2 = x - 0.60 * L;
            const double d3 = x - 0.50 * L;
            out[j] = std::exp(-d1 * d1 / 8.0) * std::exp(Complex(0.0, x - 0.7 * t)) +
                     0.5 * std::exp(-d2 * d2 / 4.5) * std::exp(Complex(0.0, -2.0 * x + 0.4 * t)) +
                     0.25 * std::exp(0.2 * t) * std::exp(-d3 * d3 / 18.0) *
                         std::exp(Complex(0.0, 3.0 * x));
        }
        return out;
    };
    const PotentialFn V = [](double x) { return std::cos(x); };
    const double t = 0.3;
    const std::vector<Complex> squared =
        apply_first_order_twice(grid, field, V, p, t, h);
    // Constant-V expansion of the squared operator, with V read pointwise:
    //   (hbar^4/4m^2) Psi_xxxx + (i hbar^3/m) Psi_txx - hbar^2 Psi_tt
    //   - (hbar^2/m) V Psi_xx - 2 i hbar V Psi_t + V^2 Psi.
    const std::vector<Complex> now = field(t);
    const std::vector<Complex> xx = spectral_derivative(grid, now, 2);
    const std::vector<Complex> xxxx = spectral_derivative(grid, now, 4);
    const std::vector<Complex> dt = fd_time1(field, t, h);
    const std::vector<Complex> dtt = fd_time2(field, t, h);
    const Sampler field_xx = [&](double tt) {
        return spectral_derivative(grid, field(tt), 2);
    };
    const std::vector<Complex> dtxx = fd_time1(field_xx, t, h);
    const std::vector<Complex> x1 = spectral_derivative(grid, now, 1);
    const double h2m = p.hbar * p.hbar / p.m;
    MismatchReport report;
    const double scale = max_abs(now);
    for (std::size_t j = 0; j < grid.size(); ++j) {
        const double x = grid.point(j);
        const double Vx = V(x);
        const Complex table = (h2m * h2m / 4.0) * xxxx[j] +
                              Complex(0.0, p.hbar * h2m) * dtxx[j] -
                              p.hbar * p.hbar * dtt[j] - h2m * Vx * xx[j] -
                              Complex(0.0, 2.0 * p.hbar * Vx) * dt[j] + Vx * Vx * now[j];
        // V'(x) = -sin x, V''(x) = -cos x.
        const Complex predicted = h2m * std::sin(x) * x1[j] + (h2m / 2.0) * Vx * now[j];
        report.max_error = std::max(report.max_error,
                                    std::abs((squared[j] - table) - predicted) / scale);
        report.mismatch_scale =
            std::max(report.mismatch_scale, std::abs(predicted) / scale);
    }
    return report;
}

} // namespace covwave::lab

#endif // COVWAVE_LAB_CHECKS_HPP
