// Copyright 2026 The pairspace Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file harmonics.hpp
 * @brief Complex spherical harmonics, Wigner rotations and half-space inner products.
 *
 * Conventions: Y_lm is orthonormal on the full sphere and carries the
 * Condon-Shortley phase, Y_{l,-m} = (-1)^m conj(Y_lm). With this choice
 * Y_lm(theta, phi + pi) = (-1)^m Y_lm(theta, phi) holds literally.
 *
 * Rotations are active, R(alpha, beta, gamma) = Rz(alpha) Ry(beta) Rz(gamma),
 * acting on functions as (R f)(u) = f(R^-1 u). Expansion coefficients transform
 * block-diagonally in l: c'_{m'} = sum_m D^l_{m'm}(alpha, beta, gamma) c_m with
 * D^l_{m'm} = exp(-i m' alpha) d^l_{m'm}(beta) exp(-i m gamma).
 */

#pragma once

#include "pairspace/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <concepts>
#include <complex>
#include <compare>
#include <map>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace pairspace {

using cplx = std::complex<double>;

inline constexpr int kMaxHarmonicDegree = 64;
inline constexpr int kMaxWignerDegree = 32;

struct AngularIndex {
    int l = 0;
    int m = 0;

    constexpr auto operator<=>(const AngularIndex&) const = default;

    [[nodiscard]] constexpr bool valid() const { return l >= 0 && m >= -l && m <= l; }
};

inline std::string to_string(const AngularIndex& idx) {
    return "(" + std::to_string(idx.l) + "," + std::to_string(idx.m) + ")";
}

inline void require_valid(const AngularIndex& idx) {
    if (!idx.valid()) {
        throw std::domain_error("invalid angular index " + to_string(idx) + ": need |m| <= l");
    }
    if (idx.l > kMaxHarmonicDegree) {
        throw std::domain_error("angular index " + to_string(idx) + " exceeds supported degree");
    }
}

/// Coefficients of an angular function, sum_{lm} c_lm Y_lm.
using AngularCoeffs = std::map<AngularIndex, cplx>;

// ----------------------------------------------------------------------------
// Normalized associated Legendre functions
// ----------------------------------------------------------------------------

/// Table of Pbar_lm(cos theta), m >= 0, normalized so that Y_lm = Pbar_lm e^{i m phi}.
/// Computed by the upward recursion in l for each m, seeded by the sectoral terms.
class LegendreTable {
public:
    LegendreTable(int max_l, double cos_theta, double sin_theta)
        : max_l_(max_l), values_(static_cast<std::size_t>((max_l + 1) * (max_l + 2) / 2), 0.0) {
        if (max_l < 0 || max_l > kMaxHarmonicDegree) {
            throw std::domain_error("LegendreTable: degree out of range");
        }
        const double x = cos_theta;
        double pmm = 1.0 / std::sqrt(4.0 * std::numbers::pi);
        for (int m = 0; m <= max_l; ++m) {
            if (m > 0) pmm *= -std::sqrt((2.0 * m + 1.0) / (2.0 * m)) * sin_theta;
            at(m, m) = pmm;
            if (m + 1 <= max_l) at(m + 1, m) = std::sqrt(2.0 * m + 3.0) * x * pmm;
            for (int l = m + 2; l <= max_l; ++l) {
                const double a = std::sqrt((4.0 * l * l - 1.0) / (double(l) * l - double(m) * m));
                const double b = std::sqrt(((l - 1.0) * (l - 1.0) - double(m) * m) /
                                           (4.0 * (l - 1.0) * (l - 1.0) - 1.0));
                at(l, m) = a * (x * at(l - 1, m) - b * at(l - 2, m));
            }
        }
    }

    [[nodiscard]] int max_l() const { return max_l_; }
    [[nodiscard]] double operator()(int l, int m) const { return values_[index(l, m)]; }

private:
    static std::size_t index(int l, int m) { return static_cast<std::size_t>(l * (l + 1) / 2 + m); }
    double& at(int l, int m) { return values_[index(l, m)]; }

    int max_l_;
    std::vector<double> values_;
};

/// All Y_lm for l <= max_l at one direction, indexed l^2 + l + m.
class HarmonicTable {
public:
    HarmonicTable(int max_l, double cos_theta, double sin_theta, double phi)
        : max_l_(max_l), values_(static_cast<std::size_t>((max_l + 1) * (max_l + 1))) {
        const LegendreTable p(max_l, cos_theta, sin_theta);
        for (int m = 0; m <= max_l; ++m) {
            const cplx e = std::polar(1.0, m * phi);
            const double sign = (m % 2 == 0) ? 1.0 : -1.0;
            for (int l = m; l <= max_l; ++l) {
                const cplx y = p(l, m) * e;
                values_[index(l, m)] = y;
                if (m > 0) values_[index(l, -m)] = sign * std::conj(y);
            }
        }
    }

    HarmonicTable(int max_l, double theta, double phi)
        : HarmonicTable(max_l, std::cos(theta), std::sin(theta), phi) {}

    [[nodiscard]] int max_l() const { return max_l_; }
    [[nodiscard]] cplx operator()(int l, int m) const { return values_[index(l, m)]; }
    [[nodiscard]] cplx operator()(const AngularIndex& i) const { return (*this)(i.l, i.m); }

    static std::size_t index(int l, int m) { return static_cast<std::size_t>(l * l + l + m); }

private:
    int max_l_;
    std::vector<cplx> values_;
};

/// Y_lm from cos(theta), sin(theta) directly; an exact zero cosine gives exact
/// equatorial zeros for odd (l - m).
inline cplx eval_ylm_cs(const AngularIndex& idx, double cos_theta, double sin_theta, double phi) {
    require_valid(idx);
    const int am = std::abs(idx.m);
    const LegendreTable p(idx.l, cos_theta, sin_theta);
    const cplx y = p(idx.l, am) * std::polar(1.0, am * std::fmod(phi, 2.0 * std::numbers::pi));
    if (idx.m >= 0) return y;
    return (am % 2 == 0 ? 1.0 : -1.0) * std::conj(y);
}

inline cplx eval_ylm(const AngularIndex& idx, double theta, double phi) {
    if (!(theta >= 0.0 && theta <= std::numbers::pi)) {
        throw std::domain_error("eval_ylm: theta outside [0, pi]");
    }
    return eval_ylm_cs(idx, std::cos(theta), std::sin(theta), phi);
}

/// True iff Y_lm vanishes identically on the equator, i.e. (l - m) is odd.
inline bool equator_zero(const AngularIndex& idx) {
    require_valid(idx);
    return ((idx.l - idx.m) % 2 + 2) % 2 == 1;
}

/// (-1)^m: the factor picked up by Y_lm under phi -> phi + pi.
inline double phi_shift_factor(const AngularIndex& idx) {
    require_valid(idx);
    return (idx.m % 2 == 0) ? 1.0 : -1.0;
}

/// Value of sum c_lm Y_lm at a direction.
inline cplx eval_angular(const AngularCoeffs& coeffs, double theta, double phi) {
    if (coeffs.empty()) return {0.0, 0.0};
    const int max_l = coeffs.rbegin()->first.l;
    const HarmonicTable y(max_l, theta, phi);
    cplx s{0.0, 0.0};
    for (const auto& [idx, c] : coeffs) s += c * y(idx);
    return s;
}

// ----------------------------------------------------------------------------
// Rotations
// ----------------------------------------------------------------------------

struct EulerAngles {
    double alpha = 0.0;
    double beta = 0.0;
    double gamma = 0.0;
};

/// Rz(alpha) Ry(beta) Rz(gamma).
inline Eigen::Matrix3d rotation_matrix(const EulerAngles& e) {
    using Eigen::AngleAxisd;
    using Eigen::Vector3d;
    return (AngleAxisd(e.alpha, Vector3d::UnitZ()) * AngleAxisd(e.beta, Vector3d::UnitY()) *
            AngleAxisd(e.gamma, Vector3d::UnitZ()))
        .toRotationMatrix();
}

/// z-y-z Euler angles of a proper rotation matrix; gamma = 0 at the gimbal poles.
inline EulerAngles euler_from_matrix(const Eigen::Matrix3d& m) {
    const double c = std::clamp(m(2, 2), -1.0, 1.0);
    const double beta = std::acos(c);
    const double sb = std::hypot(m(0, 2), m(1, 2));
    if (sb > 1e-12) {
        return {std::atan2(m(1, 2), m(0, 2)), beta, std::atan2(m(2, 1), -m(2, 0))};
    }
    if (c > 0.0) return {std::atan2(m(1, 0), m(0, 0)), 0.0, 0.0};
    return {std::atan2(-m(1, 0), m(1, 1)), std::numbers::pi, 0.0};
}

/// Euler angles of the rotation "first `first`, then `second`".
inline EulerAngles compose(const EulerAngles& second, const EulerAngles& first) {
    return euler_from_matrix(rotation_matrix(second) * rotation_matrix(first));
}

namespace detail {

/// Eigenvectors of J_y in the |l m> basis (index m + l) for every l up to
/// kMaxWignerDegree, columns ordered by eigenvalue -l, ..., l.
inline const std::vector<Eigen::MatrixXcd>& jy_eigenvectors() {
    static const auto table = [] {
        std::vector<Eigen::MatrixXcd> t;
        for (int l = 0; l <= kMaxWignerDegree; ++l) {
            const int dim = 2 * l + 1;
            Eigen::MatrixXcd jy = Eigen::MatrixXcd::Zero(dim, dim);
            for (int m = -l; m < l; ++m) {
                // <m+1| J_y |m> = -i/2 sqrt(l(l+1) - m(m+1))
                const double c = 0.5 * std::sqrt(double(l * (l + 1) - m * (m + 1)));
                jy(m + l + 1, m + l) = cplx{0.0, -c};
                jy(m + l, m + l + 1) = cplx{0.0, c};
            }
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(jy);
            t.push_back(es.eigenvectors());
        }
        return t;
    }();
    return table;
}

} // namespace detail

/// Wigner small-d matrix d^l_{m'm}(beta) = <l m'| exp(-i beta J_y) |l m>, from
/// the spectral decomposition of J_y (eigenvalues exactly -l..l); row/column
/// index m + l.
inline Eigen::MatrixXd wigner_small_d(int l, double beta) {
    if (l < 0 || l > kMaxWignerDegree) {
        throw std::domain_error("wigner_small_d: degree out of range");
    }
    const Eigen::MatrixXcd& v = detail::jy_eigenvectors()[static_cast<std::size_t>(l)];
    const int dim = 2 * l + 1;
    Eigen::VectorXcd phase(dim);
    for (int k = 0; k < dim; ++k) phase(k) = std::polar(1.0, -beta * (k - l));
    return (v * phase.asDiagonal() * v.adjoint()).real();
}

/// Full Wigner D^l matrix for the rotation R(alpha, beta, gamma).
inline Eigen::MatrixXcd wigner_D(int l, const EulerAngles& e) {
    const Eigen::MatrixXd d = wigner_small_d(l, e.beta);
    const int dim = 2 * l + 1;
    Eigen::MatrixXcd D(dim, dim);
    for (int mp = -l; mp <= l; ++mp) {
        for (int m = -l; m <= l; ++m) {
            D(mp + l, m + l) = std::polar(d(mp + l, m + l), -(mp * e.alpha + m * e.gamma));
        }
    }
    return D;
}

/// Coefficients of the rotated function. Every l present in the input appears
/// in the output with its full m-multiplet.
inline AngularCoeffs wigner_rotate(const AngularCoeffs& coeffs, const EulerAngles& e) {
    std::map<int, Eigen::VectorXcd> blocks;
    for (const auto& [idx, c] : coeffs) {
        require_valid(idx);
        auto [it, inserted] = blocks.try_emplace(idx.l, Eigen::VectorXcd::Zero(2 * idx.l + 1));
        it->second(idx.m + idx.l) += c;
    }
    AngularCoeffs out;
    for (const auto& [l, v] : blocks) {
        const Eigen::VectorXcd rotated = wigner_D(l, e) * v;
        for (int m = -l; m <= l; ++m) out[{l, m}] = rotated(m + l);
    }
    return out;
}

inline double coeff_norm(const AngularCoeffs& c) {
    double s = 0.0;
    for (const auto& [idx, v] : c) s += std::norm(v);
    return std::sqrt(s);
}

// ----------------------------------------------------------------------------
// Inner products by quadrature
// ----------------------------------------------------------------------------

/// <f, g> = sum_nodes conj(f) g w over the rule (half-domain or full sphere,
/// depending on how the rule was built). f, g: callables (theta, phi) -> complex.
template <class F, class G>
cplx angular_inner(F&& f, G&& g, const QuadratureRule& rule) {
    cplx s{0.0, 0.0};
    for (const auto& n : rule.nodes) s += std::conj(f(n.theta, n.phi)) * g(n.theta, n.phi) * n.weight;
    return s;
}

/// <f, g> over the half-space domain 0 <= theta <= pi/2. Insufficient order is
/// not detected; see refine_until_converged.
template <class F, class G>
    requires std::invocable<F&, double, double> && std::invocable<G&, double, double>
cplx half_space_inner(F&& f, G&& g, const QuadratureRule& rule) {
    if (!rule.half_space) throw std::invalid_argument("half_space_inner: rule is not a half-space rule");
    return angular_inner(std::forward<F>(f), std::forward<G>(g), rule);
}

inline cplx half_space_inner(const AngularCoeffs& f, const AngularCoeffs& g, const QuadratureRule& rule) {
    if (!rule.half_space) throw std::invalid_argument("half_space_inner: rule is not a half-space rule");
    int max_l = 0;
    for (const auto& [idx, c] : f) max_l = std::max(max_l, idx.l);
    for (const auto& [idx, c] : g) max_l = std::max(max_l, idx.l);
    cplx s{0.0, 0.0};
    for (const auto& n : rule.nodes) {
        const HarmonicTable y(max_l, n.cos_theta, n.sin_theta, n.phi);
        cplx fv{0.0, 0.0};
        cplx gv{0.0, 0.0};
        for (const auto& [idx, c] : f) fv += c * y(idx);
        for (const auto& [idx, c] : g) gv += c * y(idx);
        s += std::conj(fv) * gv * n.weight;
    }
    return s;
}

} // namespace pairspace
