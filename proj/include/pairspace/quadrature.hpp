// Copyright 2026 The pairspace Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file quadrature.hpp
 * @brief Gauss rules on the sphere, the half-sphere and the radial half-line.
 *
 * Angular rules are Gauss-Legendre in cos(theta) tensored with a uniform
 * trapezoid in phi. The radial rule is generalized Gauss-Laguerre in
 * t = (r / scale)^2, rescaled so that sum_k w_k F(r_k) approximates
 * int_0^inf F(r) r^2 dr.
 */

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <utility>
#include <vector>

#include <Eigen/Eigenvalues>

namespace pairspace {

struct GaussRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

namespace detail {

// P_n(x) and P_{n-1}(x) by the three-term recurrence.
inline std::pair<double, double> legendre_pair(int n, double x) {
    double pm1 = 1.0;
    double p0 = x;
    if (n == 0) return {1.0, 0.0};
    for (int k = 2; k <= n; ++k) {
        const double p1 = ((2.0 * k - 1.0) * x * p0 - (k - 1.0) * pm1) / k;
        pm1 = p0;
        p0 = p1;
    }
    return {p0, pm1};
}

} // namespace detail

/// n-point Gauss-Legendre on [-1, 1]; nodes ascending, Newton-polished.
inline GaussRule gauss_legendre(int n) {
    if (n < 1) throw std::invalid_argument("gauss_legendre: order must be >= 1");
    GaussRule rule;
    rule.nodes.assign(n, 0.0);
    rule.weights.assign(n, 0.0);
    if (n == 1) {
        rule.weights[0] = 2.0;
        return rule;
    }
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        for (int iter = 0; iter < 100; ++iter) {
            const auto [p, pm1] = detail::legendre_pair(n, x);
            const double dp = n * (x * p - pm1) / (x * x - 1.0);
            const double dx = p / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        const auto [p, pm1] = detail::legendre_pair(n, x);
        const double dp = n * (x * p - pm1) / (x * x - 1.0);
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.nodes[i] = -x;
        rule.nodes[n - 1 - i] = x;
        rule.weights[i] = w;
        rule.weights[n - 1 - i] = w;
    }
    if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
    return rule;
}

namespace detail {

// L_n^{(alpha)}(t) and L_{n-1}^{(alpha)}(t) by the three-term recurrence.
inline std::pair<double, double> laguerre_pair(int n, double alpha, double t) {
    double lm1 = 0.0;
    double l0 = 1.0;
    for (int k = 0; k < n; ++k) {
        const double l1 = ((2.0 * k + 1.0 + alpha - t) * l0 - (k + alpha) * lm1) / (k + 1.0);
        lm1 = l0;
        l0 = l1;
    }
    return {l0, lm1};
}

} // namespace detail

/// Generalized Gauss-Laguerre for weight t^alpha e^{-t} on [0, inf).
/// `weights` hold log(w_k) so that large-node weights survive multiplication by e^{t_k}.
inline GaussRule gauss_laguerre_log(int n, double alpha) {
    if (n < 1) throw std::invalid_argument("gauss_laguerre: order must be >= 1");
    if (!(alpha > -1.0)) throw std::invalid_argument("gauss_laguerre: alpha must exceed -1");

    Eigen::VectorXd diag(n);
    Eigen::VectorXd sub(n > 1 ? n - 1 : 0);
    for (int k = 0; k < n; ++k) diag(k) = 2.0 * k + alpha + 1.0;
    for (int k = 1; k < n; ++k) sub(k - 1) = std::sqrt(k * (k + alpha));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig;
    eig.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);

    GaussRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    const double log_pref = std::lgamma(n + alpha + 1.0) - std::lgamma(n + 1.0);
    for (int i = 0; i < n; ++i) {
        double t = eig.eigenvalues()(i);
        for (int iter = 0; iter < 10; ++iter) {
            const auto [ln, lnm1] = detail::laguerre_pair(n, alpha, t);
            const double dl = (n * ln - (n + alpha) * lnm1) / t;
            const double dt = ln / dl;
            t -= dt;
            if (std::abs(dt) <= 1e-15 * t) break;
        }
        const auto [ln1, ln] = detail::laguerre_pair(n + 1, alpha, t);
        (void)ln;
        rule.nodes[i] = t;
        rule.weights[i] = log_pref + std::log(t) - 2.0 * std::log(n + 1.0) - 2.0 * std::log(std::abs(ln1));
    }
    return rule;
}

/// One node of an angular rule; cos/sin of theta cached for the harmonic recursions.
struct AngularNode {
    double theta;
    double phi;
    double weight;
    double cos_theta;
    double sin_theta;
};

/// Tensor-product rule on the full sphere or on the half-domain 0 <= theta < pi/2.
struct QuadratureRule {
    std::vector<AngularNode> nodes;
    int n_theta = 0;
    int n_phi = 0;
    bool half_space = false;

    [[nodiscard]] double total_weight() const {
        double s = 0.0;
        for (const auto& n : nodes) s += n.weight;
        return s;
    }
};

namespace detail {

inline QuadratureRule angular_rule(int n_theta, int n_phi, bool half) {
    if (n_theta < 1 || n_phi < 1) {
        throw std::invalid_argument("QuadratureRule: orders must be positive");
    }
    const GaussRule gl = gauss_legendre(n_theta);
    QuadratureRule rule;
    rule.n_theta = n_theta;
    rule.n_phi = n_phi;
    rule.half_space = half;
    rule.nodes.reserve(static_cast<std::size_t>(n_theta) * n_phi);
    const double dphi = 2.0 * std::numbers::pi / n_phi;
    for (int i = 0; i < n_theta; ++i) {
        // map [-1, 1] onto [0, 1] for the half-sphere
        const double c = half ? 0.5 * (gl.nodes[i] + 1.0) : gl.nodes[i];
        const double wc = half ? 0.5 * gl.weights[i] : gl.weights[i];
        const double s = std::sqrt((1.0 - c) * (1.0 + c));
        const double theta = std::acos(c);
        for (int j = 0; j < n_phi; ++j) {
            rule.nodes.push_back({theta, j * dphi, wc * dphi, c, s});
        }
    }
    return rule;
}

} // namespace detail

/// Half-domain rule; weights sum to 2 pi.
inline QuadratureRule half_space_rule(int n_theta, int n_phi) {
    return detail::angular_rule(n_theta, n_phi, true);
}

/// Full-sphere rule; weights sum to 4 pi.
inline QuadratureRule full_sphere_rule(int n_theta, int n_phi) {
    return detail::angular_rule(n_theta, n_phi, false);
}

/// Angular orders for harmonics up to degree L: n_theta = 2L + 8, n_phi = 4L + 16.
struct AngularOrders {
    int n_theta;
    int n_phi;

    static AngularOrders for_degree(int max_l) { return {2 * max_l + 8, 4 * max_l + 16}; }
};

/// Radial rule: sum_k weights[k] * F(nodes[k]) ~ int_0^inf F(r) r^2 dr.
/// Exact when F(r) r^2 dr reduces to (r/scale)^(2 lambda) e^{-(r/scale)^2} times
/// a polynomial in r^2 of degree below 2 * order.
struct RadialRule {
    std::vector<double> nodes;
    std::vector<double> weights;

    static RadialRule make(int order, double scale, int lambda) {
        if (!(scale > 0.0)) throw std::invalid_argument("RadialRule: scale must be positive");
        if (lambda < 0) throw std::invalid_argument("RadialRule: lambda must be non-negative");
        const double alpha = lambda + 0.5;
        const GaussRule g = gauss_laguerre_log(order, alpha);
        RadialRule rule;
        rule.nodes.resize(order);
        rule.weights.resize(order);
        const double s3 = scale * scale * scale;
        for (int k = 0; k < order; ++k) {
            const double t = g.nodes[k];
            rule.nodes[k] = scale * std::sqrt(t);
            // t^(1/2 - alpha) = t^(-lambda)
            rule.weights[k] = 0.5 * s3 * std::exp(g.weights[k] + t - lambda * std::log(t));
        }
        return rule;
    }
};

/// Outcome of a refinement sweep.
struct RefinementResult {
    std::complex<double> value;
    AngularOrders orders;
    double last_change;
    bool converged;
};

/// Evaluates `integral(AngularOrders)` at the default orders for `max_l`, then
/// doubles both orders until successive values differ by at most
/// tol * max(1, |value|) or `max_doublings` is exhausted.
template <class Integral>
RefinementResult refine_until_converged(Integral&& integral, int max_l, double tol,
                                        int max_doublings = 5) {
    AngularOrders orders = AngularOrders::for_degree(max_l);
    std::complex<double> prev = integral(orders);
    double change = std::numeric_limits<double>::infinity();
    for (int step = 0; step < max_doublings; ++step) {
        const AngularOrders next{orders.n_theta * 2, orders.n_phi * 2};
        const std::complex<double> cur = integral(next);
        change = std::abs(cur - prev);
        orders = next;
        prev = cur;
        if (change <= tol * std::max(1.0, std::abs(cur))) {
            return {cur, orders, change, true};
        }
    }
    return {prev, orders, change, false};
}

} // namespace pairspace
