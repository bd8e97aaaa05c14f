// SPDX-FileCopyrightText: 2026 covwave contributors
// SPDX-License-Identifier: Apache-2.0
#ifndef COVWAVE_LAB_GRID_HPP
#define COVWAVE_LAB_GRID_HPP

/// Periodic 1D sample grid for the numerical lab. Points sit at
/// x_j = j L / N; the resolvable wave numbers are k_n = 2 pi n / L for
/// integer n in [-N/2, N/2), stored in standard transform order (index j
/// maps to n = j for j < N/2 and n = j - N otherwise).

#include "covwave/numeric.hpp"

#include <cmath>
#include <cstddef>
#include <optional>

namespace covwave::lab {

inline constexpr double pi = 3.14159265358979323846264338327950288;

class Grid1D {
public:
    Grid1D(double length, std::size_t size) : length_(length), size_(size) {
        COVWAVE_REQUIRE(length > 0.0, "grid length must be positive");
        COVWAVE_REQUIRE(size >= 2 && (size & (size - 1)) == 0,
                        "grid size must be a power of two");
    }

    double length() const { return length_; }
    std::size_t size() const { return size_; }
    double spacing() const { return length_ / static_cast<double>(size_); }
    double point(std::size_t j) const { return spacing() * static_cast<double>(j); }

    /// Integer mode number for a transform-ordered index: n in [-N/2, N/2).
    long mode_number(std::size_t index) const {
        const long n = static_cast<long>(index);
        const long half = static_cast<long>(size_) / 2;
        return n < half ? n : n - static_cast<long>(size_);
    }

    /// k_n = 2 pi n / L for a transform-ordered index.
    double wavenumber(std::size_t index) const {
        return 2.0 * pi * static_cast<double>(mode_number(index)) / length_;
    }

    /// The integer mode number whose wave number equals k, if k sits on
    /// the lattice (within `tol` of 2 pi n / L) and is resolvable.
    std::optional<long> lattice_mode(double k, double tol = 1e-9) const {
        const double raw = k * length_ / (2.0 * pi);
        const double rounded = std::round(raw);
        if (std::abs(raw - rounded) > tol) return std::nullopt;
        const long n = static_cast<long>(rounded);
        const long half = static_cast<long>(size_) / 2;
        if (n < -half || n >= half) return std::nullopt;
        return n;
    }

    /// Transform-ordered index of integer mode n.
    std::size_t mode_index(long n) const {
        const long half = static_cast<long>(size_) / 2;
        COVWAVE_REQUIRE(n >= -half && n < half, "mode number out of range");
        return static_cast<std::size_t>(n >= 0 ? n : n + static_cast<long>(size_));
    }

    friend bool operator==(const Grid1D& a, const Grid1D& b) {
        return a.length_ == b.length_ && a.size_ == b.size_;
    }

private:
    double length_;
    std::size_t size_;
};

} // namespace covwave::lab

#endif // COVWAVE_LAB_GRID_HPP
