// SPDX-FileCopyrightText: 2026 covwave contributors
// SPDX-License-Identifier: Apache-2.0

/// @file frame.hpp
/// @brief Frame transformations (rotations and boosts) acting on operators.
///
/// A FrameTransform carries two exact 4x4 matrices relating an unprimed
/// frame to a primed one:
///   derivatives:  d_mu  = sum_nu  deriv[mu][nu] d'_nu      (chain rule)
///   coordinates:  x^mu  = sum_nu  coord[mu][nu] x'^nu  (+ no offsets)
/// Rotations act on the spatial block and are exactly orthogonal over
/// Q(sqrt2). The Galilean boost uses plain time (x^0 = t, speed symbol v);
/// the Lorentz boost uses the light-scaled time coordinate (x^0 = ct,
/// speed ratio beta with the boost factor gamma obeying its quadratic
/// rule). Boosts are along x^1 unless another axis is requested; a boost
/// in a general direction is reproduced by conjugating with rotations.

#ifndef COVWAVE_FRAME_HPP
#define COVWAVE_FRAME_HPP

#include "covwave/multiplier.hpp"

#include <array>
#include <map>
#include <string>

namespace covwave {

/// Classification of a transform; composites keep the generic tag.
enum class FrameKind { identity, rotation, galilean, lorentz, composite };

/// Exact linear change of frame with its derivative substitution matrix.
class FrameTransform {
  public:
    using Mat4 = std::array<std::array<Scalar, 4>, 4>;

    static FrameTransform identity() {
        return FrameTransform(FrameKind::identity, "identity", identity_mat(), identity_mat());
    }

    /// Half-turn about a spatial axis: the two other spatial axes flip.
    static FrameTransform rotation_pi(int axis) {
        Mat4 r = identity_mat();
        for (int j = 1; j <= 3; ++j)
            if (j != axis) r[idx(j)][idx(j)] = Scalar(-1);
        return FrameTransform(FrameKind::rotation, "rotation pi about x" + std::to_string(axis), r,
                              r);
    }

    /// Quarter turn about a spatial axis. With (j, k) the other two axes in
    /// cyclic order, d_j -> d'_k and d_k -> -d'_j.
    static FrameTransform rotation_half_pi(int axis) {
        auto [j, k] = other_axes(axis);
        Mat4 r = identity_mat();
        r[idx(j)][idx(j)] = Scalar(0);
        r[idx(k)][idx(k)] = Scalar(0);
        r[idx(j)][idx(k)] = Scalar(1);
        r[idx(k)][idx(j)] = Scalar(-1);
        return FrameTransform(FrameKind::rotation, "rotation pi/2 about x" + std::to_string(axis),
                              r, r);
    }

    /// Eighth turn about a spatial axis. With (j, k) the other two axes in
    /// cyclic order, d_j -> (d'_j + d'_k)/sqrt2 and d_k -> (d'_k - d'_j)/sqrt2.
    static FrameTransform rotation_quarter_pi(int axis) {
        auto [j, k] = other_axes(axis);
        Scalar inv_r2 = Scalar(Coeff::sqrt2()) / Scalar(2);
        Mat4 r = identity_mat();
        r[idx(j)][idx(j)] = inv_r2;
        r[idx(j)][idx(k)] = inv_r2;
        r[idx(k)][idx(k)] = inv_r2;
        r[idx(k)][idx(j)] = -inv_r2;
        return FrameTransform(FrameKind::rotation, "rotation pi/4 about x" + std::to_string(axis),
                              r, r);
    }

    /// Boost with plain time: t = t', x = x' + v t' along the given axis,
    /// so d_t = d_t' - v d_x' and spatial derivatives are unchanged.
    static FrameTransform galilean(const Scalar& v, int axis = 1) {
        COVWAVE_REQUIRE(axis >= 1 && axis <= 3, "boost axis must be spatial");
        Mat4 d = identity_mat();
        d[0][idx(axis)] = -v;
        Mat4 m = identity_mat();
        m[idx(axis)][0] = v;
        FrameTransform t(FrameKind::galilean, "galilean boost along x" + std::to_string(axis), d,
                         m);
        t.speed_ = v;
        return t;
    }

    /// Boost with light-scaled time: d_0 = gamma (d_0' - beta d_1') and
    /// d_1 = gamma (d_1' - beta d_0') for axis 1.
    static FrameTransform lorentz(const Scalar& beta, int axis = 1) {
        COVWAVE_REQUIRE(axis >= 1 && axis <= 3, "boost axis must be spatial");
        Scalar g = Scalar::variable(sym::gamma());
        if (beta.is_zero()) g = Scalar(1);
        Mat4 d = identity_mat();
        d[0][0] = g;
        d[0][idx(axis)] = -g * beta;
        d[idx(axis)][idx(axis)] = g;
        d[idx(axis)][0] = -g * beta;
        Mat4 m = identity_mat();
        m[0][0] = g;
        m[0][idx(axis)] = g * beta;
        m[idx(axis)][idx(axis)] = g;
        m[idx(axis)][0] = g * beta;
        FrameTransform t(FrameKind::lorentz, "lorentz boost along x" + std::to_string(axis), d, m);
        t.speed_ = beta;
        return t;
    }

    /// Composite transform: first `first`, then `second`.
    static FrameTransform compose(const FrameTransform& first, const FrameTransform& second) {
        return FrameTransform(FrameKind::composite, first.label_ + " then " + second.label_,
                              multiply(first.deriv_, second.deriv_),
                              multiply(first.coord_, second.coord_));
    }

    FrameKind kind() const { return kind_; }
    const std::string& label() const { return label_; }
    const Mat4& deriv_matrix() const { return deriv_; }
    const Mat4& coord_matrix() const { return coord_; }
    const Scalar& speed() const { return speed_; }

  private:
    FrameTransform(FrameKind kind, std::string label, Mat4 deriv, Mat4 coord)
        : kind_(kind), label_(std::move(label)), deriv_(std::move(deriv)),
          coord_(std::move(coord)) {}

    static std::size_t idx(int mu) { return static_cast<std::size_t>(mu); }

    static std::pair<int, int> other_axes(int axis) {
        COVWAVE_REQUIRE(axis >= 1 && axis <= 3, "rotation axis must be spatial");
        int j = axis % 3 + 1;
        int k = j % 3 + 1;
        return {j, k};
    }

    static Mat4 identity_mat() {
        Mat4 m;
        for (std::size_t a = 0; a < 4; ++a)
            for (std::size_t b = 0; b < 4; ++b) m[a][b] = Scalar(a == b ? 1 : 0);
        return m;
    }

    static Mat4 multiply(const Mat4& x, const Mat4& y) {
        Mat4 out;
        for (std::size_t a = 0; a < 4; ++a)
            for (std::size_t b = 0; b < 4; ++b) {
                Scalar acc = 0;
                for (std::size_t c = 0; c < 4; ++c) acc += x[a][c] * y[c][b];
                out[a][b] = acc;
            }
        return out;
    }

    FrameKind kind_;
    std::string label_;
    Mat4 deriv_;
    Mat4 coord_;
    Scalar speed_ = Scalar(0);
};

/// First-order substitution rules: d_mu as an order-one operator in the
/// primed frame. Higher orders follow by composition inside boost_operator.
inline std::map<DerivMono, LinearPDE, DerivMonoGreater>
transform_derivatives(const FrameTransform& t) {
    std::map<DerivMono, LinearPDE, DerivMonoGreater> out;
    for (int mu = 0; mu <= 3; ++mu) {
        LinearPDE rule;
        for (int nu = 0; nu <= 3; ++nu)
            rule.add_term(DerivMono::d(nu),
                          t.deriv_matrix()[static_cast<std::size_t>(mu)]
                                          [static_cast<std::size_t>(nu)]);
        out.emplace(DerivMono::d(mu), rule);
    }
    return out;
}

/// Rewrites the operator in the primed frame and conjugates it through the
/// multiplier (a function of the primed coordinates): substitute
/// d_mu -> sum_nu deriv[mu][nu] d'_nu, expand, then push through g.
/// The potential slot is a frame scalar and passes through untouched.
inline LinearPDE boost_operator(const LinearPDE& op, const FrameTransform& t,
                                const ExpLinearMultiplier& g) {
    const FrameTransform::Mat4& d = t.deriv_matrix();
    LinearPDE primed;
    primed.set_potential(op.potential());
    for (const auto& [m, coeff] : op.terms()) {
        // Multiply out  prod_mu (row_mu)^alpha_mu  over the primed partials.
        std::map<DerivMono, Scalar, DerivMonoGreater> acc;
        acc.emplace(DerivMono::unit(), coeff);
        for (int mu = 0; mu <= 3; ++mu) {
            for (unsigned int rep = 0; rep < m[mu]; ++rep) {
                std::map<DerivMono, Scalar, DerivMonoGreater> next;
                for (const auto& [dm, dc] : acc)
                    for (int nu = 0; nu <= 3; ++nu) {
                        const Scalar& entry = d[static_cast<std::size_t>(mu)]
                                               [static_cast<std::size_t>(nu)];
                        if (entry.is_zero()) continue;
                        Scalar piece = dc * entry;
                        DerivMono key = dm * DerivMono::d(nu);
                        auto [it, inserted] = next.emplace(key, piece);
                        if (!inserted) it->second += piece;
                    }
                acc = std::move(next);
            }
        }
        for (const auto& [dm, dc] : acc) primed.add_term(dm, dc);
    }
    return apply_operator(primed, g);
}

/// Re-expresses a multiplier over the pre-transform coordinates as one over
/// the post-transform coordinates, using x^mu = sum_nu coord[mu][nu] x'^nu:
/// the new exponents are lam'_nu = sum_mu lam_mu coord[mu][nu].
inline ExpLinearMultiplier map_multiplier(const ExpLinearMultiplier& g, const FrameTransform& t) {
    ExpLinearMultiplier out;
    out.prefactor = g.prefactor;
    for (std::size_t nu = 0; nu < 4; ++nu) {
        Scalar acc = 0;
        for (std::size_t mu = 0; mu < 4; ++mu) acc += g.lambda[mu] * t.coord_matrix()[mu][nu];
        out.lambda[nu] = acc;
    }
    return out;
}

} // namespace covwave

#endif // COVWAVE_FRAME_HPP
