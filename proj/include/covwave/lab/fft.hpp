// SPDX-FileCopyrightText: 2026 covwave contributors
// SPDX-License-Identifier: Apache-2.0
#ifndef COVWAVE_LAB_FFT_HPP
#define COVWAVE_LAB_FFT_HPP

/// Radix-2 complex FFT, self-contained. Forward transform uses the
/// e^{-2 pi i j l / N} kernel without normalization; the inverse applies
/// the conjugate kernel and divides by N, so ifft(fft(x)) == x up to
/// rounding. Twiddle factors are computed by direct trigonometric
/// evaluation per butterfly (no recurrence), trading a few cycles for
/// last-bit accuracy — the lab's invariant checks sit at the 1e-12 level
/// and must not be limited by the transform.

#include "covwave/numeric.hpp"
#include "covwave/lab/grid.hpp"

#include <complex>
#include <cstddef>
#include <vector>

namespace covwave::lab {

using Complex = std::complex<double>;

inline void fft_inplace(std::vector<Complex>& a, bool inverse) {
    const std::size_t n = a.size();
    COVWAVE_REQUIRE(n >= 1 && (n & (n - 1)) == 0, "transform size must be a power of two");
    // Bit-reversal permutation.
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    const double sign = inverse ? 1.0 : -1.0;
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double base = sign * 2.0 * pi / static_cast<double>(len);
        for (std::size_t start = 0; start < n; start += len) {
            for (std::size_t j = 0; j < len / 2; ++j) {
                const double angle = base * static_cast<double>(j);
                const Complex w(std::cos(angle), std::sin(angle));
                const Complex u = a[start + j];
                const Complex t = w * a[start + j + len / 2];
                a[start + j] = u + t;
                a[start + j + len / 2] = u - t;
            }
        }
    }
    if (inverse) {
        const double scale = 1.0 / static_cast<double>(n);
        for (Complex& x : a) x *= scale;
    }
}

inline std::vector<Complex> fft(std::vector<Complex> a) {
    fft_inplace(a, false);
    return a;
}

inline std::vector<Complex> ifft(std::vector<Complex> a) {
    fft_inplace(a, true);
    return a;
}

/// d^order/dx^order by multiplication with (i k)^order in mode space.
inline std::vector<Complex> spectral_derivative(const Grid1D& grid,
                                                const std::vector<Complex>& values,
                                                unsigned int order) {
    COVWAVE_REQUIRE(values.size() == grid.size(), "sample count must match the grid");
    std::vector<Complex> modes = fft(values);
    for (std::size_t j = 0; j < modes.size(); ++j) {
        const Complex ik(0.0, grid.wavenumber(j));
        Complex factor(1.0, 0.0);
        for (unsigned int p = 0; p < order; ++p) factor *= ik;
        modes[j] *= factor;
    }
    return ifft(std::move(modes));
}

} // namespace covwave::lab

#endif // COVWAVE_LAB_FFT_HPP
