// Copyright 2026 The pairspace Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file equivalence.hpp
 * @brief Half-space wave functions versus their symmetrized full-space extensions.
 *
 * A half-space function psi on D is extended to all of R^3 by
 * Psi(r) = psi(rep(r)) / sqrt(2), where rep(r) is the representative of r in D.
 * Psi is even under r -> -r, and since the full-space integral of an even
 * density is twice the half-space one, the 1/sqrt(2) makes norms and matrix
 * elements of inversion-even multiplicative observables coincide.
 *
 * The center-of-mass factor is common to both formulations (a unit-norm
 * Gaussian) and is left implicit.
 */

#pragma once

#include "pairspace/configspace.hpp"
#include "pairspace/expansion.hpp"
#include "pairspace/harmonics.hpp"
#include "pairspace/quadrature.hpp"

#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace pairspace {

/// Multiplicative operator k(r) in the relative coordinate, even under r -> -r.
class Observable {
public:
    using Kernel = std::function<double(const Vec3&)>;

    /// Throws std::invalid_argument if the kernel is not inversion-even on a
    /// fixed set of test points (|k(r) - k(-r)| >= 1e-12).
    Observable(std::string name, Kernel kernel) : name_(std::move(name)), kernel_(std::move(kernel)) {
        if (!kernel_) throw std::invalid_argument("Observable: empty kernel");
        std::mt19937_64 gen(7);
        std::uniform_real_distribution<double> u(-4.0, 4.0);
        for (int i = 0; i < 64; ++i) {
            const Vec3 v{u(gen), u(gen), u(gen)};
            if (std::abs(kernel_(v) - kernel_(-v)) >= 1e-12) {
                throw std::invalid_argument("Observable '" + name_ + "' is not even under inversion");
            }
        }
    }

    [[nodiscard]] const std::string& name() const { return name_; }
    double operator()(const Vec3& v) const { return kernel_(v); }

    static Observable identity() {
        return {"identity", [](const Vec3&) { return 1.0; }};
    }
    static Observable r_squared() {
        return {"r2", [](const Vec3& v) { return dot(v, v); }};
    }
    static Observable gaussian_well() {
        return {"gaussian_well", [](const Vec3& v) { return std::exp(-dot(v, v)); }};
    }

    /// Lookup by name: "identity", "r2", "gaussian_well".
    static std::optional<Observable> named(const std::string& name) {
        if (name == "identity") return identity();
        if (name == "r2") return r_squared();
        if (name == "gaussian_well") return gaussian_well();
        return std::nullopt;
    }

private:
    std::string name_;
    Kernel kernel_;
};

/// Full-space continuation of a half-space expansion.
class FullSpaceFunction {
public:
    FullSpaceFunction(WaveExpansion w, double amplitude) : w_(std::move(w)), amplitude_(amplitude) {}

    cplx operator()(const Vec3& r) const {
        return amplitude_ * evaluate(w_, HalfSpaceVector::representative(r).vec());
    }

    [[nodiscard]] const WaveExpansion& source() const { return w_; }
    [[nodiscard]] double amplitude() const { return amplitude_; }

private:
    WaveExpansion w_;
    double amplitude_;
};

/// Psi(r) = psi(rep(r)) / sqrt(2). With renormalize = false the 1/sqrt(2) is
/// omitted. Odd or mixed exchange parity is rejected: its even continuation
/// would not be the conventional labeled-particle function.
inline FullSpaceFunction extend_to_fullspace(const WaveExpansion& w, bool renormalize = true) {
    if (conventional_exchange_parity(w) != ExchangeParity::even) {
        throw std::invalid_argument("extend_to_fullspace: expansion has odd-l content");
    }
    return {w, renormalize ? 1.0 / std::numbers::sqrt2 : 1.0};
}

/// Quadrature for equivalence checks: angular orders for the larger degree and
/// a radial rule of `radial_order` nodes matched to the radial basis.
struct EquivalenceQuadrature {
    AngularOrders orders;
    int radial_order = 60;
};

/// int_D |psi|^2 d^3r.
inline double halfspace_norm_squared(const WaveExpansion& w, std::optional<EquivalenceQuadrature> quad = std::nullopt) {
    const EquivalenceQuadrature q = quad.value_or(EquivalenceQuadrature{AngularOrders::for_degree(w.spec().max_l())});
    return quadrature_norm_squared(w, SpaceQuadrature::half(w.spec().radial(), q.orders, q.radial_order));
}

namespace detail {

template <class F>
cplx fullspace_integral(F&& integrand, const RadialRule& radial, const QuadratureRule& angular) {
    cplx s{0.0, 0.0};
    for (std::size_t k = 0; k < radial.nodes.size(); ++k) {
        const double r = radial.nodes[k];
        for (const auto& n : angular.nodes) {
            const Vec3 v{r * n.sin_theta * std::cos(n.phi), r * n.sin_theta * std::sin(n.phi), r * n.cos_theta};
            s += integrand(v) * (radial.weights[k] * n.weight);
        }
    }
    return s;
}

/// sum over quadrature nodes of conj(psi1) k psi2 w. With `to_representative`
/// each node direction is first mapped into D, as the full-space continuation
/// prescribes. Harmonic and radial tables are built once per node.
inline cplx sandwich(const WaveExpansion& w1, const WaveExpansion& w2, const Observable& obs,
                     const SpaceQuadrature& q, bool to_representative) {
    const int max_l = std::max(w1.spec().max_l(), w2.spec().max_l());
    std::vector<HarmonicTable> tables;
    tables.reserve(q.angular.nodes.size());
    for (const auto& n : q.angular.nodes) {
        const Vec3 u{n.sin_theta * std::cos(n.phi), n.sin_theta * std::sin(n.phi), n.cos_theta};
        if (!to_representative || in_domain(u)) {
            tables.emplace_back(max_l, n.cos_theta, n.sin_theta, n.phi);
        } else {
            const Vec3 rep = HalfSpaceVector::representative(u).vec();
            tables.emplace_back(max_l, rep.z, std::hypot(rep.x, rep.y), std::atan2(rep.y, rep.x));
        }
    }
    cplx s{0.0, 0.0};
    for (std::size_t k = 0; k < q.radial.nodes.size(); ++k) {
        const double r = q.radial.nodes[k];
        const std::vector<double> g = w1.spec().radial().eval_all(r);
        for (std::size_t a = 0; a < q.angular.nodes.size(); ++a) {
            const AngularNode& n = q.angular.nodes[a];
            const Vec3 v{r * n.sin_theta * std::cos(n.phi), r * n.sin_theta * std::sin(n.phi), r * n.cos_theta};
            const cplx x = evaluate_tables(w1, g, tables[a]);
            const cplx y = evaluate_tables(w2, g, tables[a]);
            s += std::conj(x) * obs(v) * y * (q.radial.weights[k] * n.weight);
        }
    }
    return s;
}

} // namespace detail

/// int_{R^3} |Psi|^2 d^3r.
inline double fullspace_norm_squared(const FullSpaceFunction& f, std::optional<EquivalenceQuadrature> quad = std::nullopt) {
    const WaveExpansion& w = f.source();
    const EquivalenceQuadrature q = quad.value_or(EquivalenceQuadrature{AngularOrders::for_degree(w.spec().max_l())});
    const SpaceQuadrature sq = SpaceQuadrature::full(w.spec().radial(), q.orders, q.radial_order);
    return detail::fullspace_integral([&](const Vec3& v) { return cplx{std::norm(f(v)), 0.0}; }, sq.radial,
                                      sq.angular)
        .real();
}

struct MatrixElementRecord {
    std::string observable;
    cplx half_value;
    cplx full_value;
    double abs_diff = 0.0;
};

/// <psi1| k |psi2> over D versus <Psi1| k |Psi2> over R^3.
inline MatrixElementRecord matrix_element_compare(const WaveExpansion& w1, const WaveExpansion& w2,
                                                  const Observable& obs, bool renormalize = true,
                                                  std::optional<EquivalenceQuadrature> quad = std::nullopt) {
    if (!(w1.spec().radial() == w2.spec().radial())) {
        throw std::invalid_argument("matrix_element_compare: expansions use different radial bases");
    }
    const int max_l = std::max(w1.spec().max_l(), w2.spec().max_l());
    const EquivalenceQuadrature q = quad.value_or(EquivalenceQuadrature{AngularOrders::for_degree(max_l)});
    const RadialBasis& basis = w1.spec().radial();

    const SpaceQuadrature half = SpaceQuadrature::half(basis, q.orders, q.radial_order);
    const cplx half_value = detail::sandwich(w1, w2, obs, half, false);

    const FullSpaceFunction f1 = extend_to_fullspace(w1, renormalize);
    const FullSpaceFunction f2 = extend_to_fullspace(w2, renormalize);
    const SpaceQuadrature full = SpaceQuadrature::full(basis, q.orders, q.radial_order);
    const cplx full_value = f1.amplitude() * f2.amplitude() * detail::sandwich(w1, w2, obs, full, true);

    return {obs.name(), half_value, full_value, std::abs(half_value - full_value)};
}

} // namespace pairspace
