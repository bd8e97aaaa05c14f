// SPDX-FileCopyrightText: 2026 covwave contributors
// SPDX-License-Identifier: Apache-2.0
#ifndef COVWAVE_LAB_STATE_HPP
#define COVWAVE_LAB_STATE_HPP

/// Discretized wave states. A first-order-in-time state carries only the
/// field samples; second-order equations additionally carry the time
/// derivative samples, which the branch decomposition needs.

#include "covwave/lab/fft.hpp"
#include "covwave/lab/grid.hpp"

#include <cmath>
#include <complex>
#include <utility>
#include <vector>

namespace covwave::lab {

struct WaveState {
    Grid1D grid;
    std::vector<Complex> values;      ///< field samples Psi(x_j)
    std::vector<Complex> derivative;  ///< d/dt samples; empty for first-order states
    double time = 0.0;

    WaveState(Grid1D g, std::vector<Complex> v)
        : grid(g), values(std::move(v)) {
        COVWAVE_REQUIRE(values.size() == grid.size(), "sample count must match the grid");
    }
    WaveState(Grid1D g, std::vector<Complex> v, std::vector<Complex> dv, double t)
        : grid(g), values(std::move(v)), derivative(std::move(dv)), time(t) {
        COVWAVE_REQUIRE(values.size() == grid.size(), "sample count must match the grid");
        COVWAVE_REQUIRE(derivative.empty() || derivative.size() == grid.size(),
                        "derivative sample count must match the grid");
    }

    bool second_order() const { return !derivative.empty(); }

    /// Continuum-normalized L2 norm: sqrt(dx * sum |Psi_j|^2).
    double norm() const {
        double s = 0.0;
        for (const Complex& x : values) s += std::norm(x);
        return std::sqrt(grid.spacing() * s);
    }
};

/// Normalized Gaussian packet centered at `center` with width sigma and a
/// momentum kick k0 (which must sit on the wave-number lattice so the
/// samples are exactly periodic).
inline WaveState make_gaussian(const Grid1D& grid, double sigma, double center,
                               double k0 = 0.0) {
    COVWAVE_REQUIRE(sigma > 0.0, "packet width must be positive");
    COVWAVE_REQUIRE(grid.lattice_mode(k0).has_value(),
                    "momentum kick must sit on the wave-number lattice");
    std::vector<Complex> v(grid.size());
    const double amp = std::pow(pi * sigma * sigma, -0.25);
    for (std::size_t j = 0; j < grid.size(); ++j) {
        const double x = grid.point(j);
        const double arg = (x - center) / sigma;
        v[j] = amp * std::exp(-0.5 * arg * arg) *
               std::exp(Complex(0.0, k0 * x));
    }
    return WaveState(grid, std::move(v));
}

/// Unit-amplitude eigenmode exp(i k_n x).
inline WaveState make_mode(const Grid1D& grid, long n) {
    std::vector<Complex> v(grid.size());
    const double k = grid.wavenumber(grid.mode_index(n));
    for (std::size_t j = 0; j < grid.size(); ++j)
        v[j] = std::exp(Complex(0.0, k * grid.point(j)));
    return WaveState(grid, std::move(v));
}

} // namespace covwave::lab

#endif // COVWAVE_LAB_STATE_HPP
