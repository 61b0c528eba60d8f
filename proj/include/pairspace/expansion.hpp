// Copyright 2026 The pairspace Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file expansion.hpp
 * @brief Radial x angular expansions psi(r) = sum a_lmn g_n(r) Y_lm(theta, phi).
 *
 * Coefficients are constants: the center-of-mass dependence a_lmn(R) is
 * suppressed because every constraint acts identically at each fixed R.
 */

#pragma once

#include "pairspace/configspace.hpp"
#include "pairspace/harmonics.hpp"
#include "pairspace/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace pairspace {

/// Orthonormal radial functions
///   g_n(r) = N_n (r/s)^lambda exp(-r^2 / 2 s^2) L_n^{(lambda + 1/2)}(r^2 / s^2),
/// n = 0 .. n_max-1, with int g_n g_n' r^2 dr = delta_nn'. lambda = 0 is the
/// s-wave isotropic-oscillator family; any fixed lambda is complete on L^2(r^2 dr).
struct RadialBasis {
    int n_max = 1;
    double scale = 1.0;
    int lambda = 0;

    /// Unit-scale oscillator family.
    static RadialBasis oscillator(int n_max) { return make(n_max, 1.0, 0); }

    static RadialBasis make(int n_max, double scale, int lambda) {
        if (n_max < 1) throw std::invalid_argument("RadialBasis: n_max must be positive");
        if (!(scale > 0.0)) throw std::invalid_argument("RadialBasis: scale must be positive");
        if (lambda < 0) throw std::invalid_argument("RadialBasis: lambda must be non-negative");
        return {n_max, scale, lambda};
    }

    bool operator==(const RadialBasis&) const = default;

    /// g_0 .. g_{n_max-1} at r.
    [[nodiscard]] std::vector<double> eval_all(double r) const {
        std::vector<double> g(static_cast<std::size_t>(n_max));
        const double alpha = lambda + 0.5;
        const double t = (r / scale) * (r / scale);
        const double common = std::pow(r / scale, lambda) * std::exp(-0.5 * t);
        const double log_s3 = 3.0 * std::log(scale);
        double lm1 = 0.0;
        double l0 = 1.0;
        for (int n = 0; n < n_max; ++n) {
            const double log_norm =
                0.5 * (std::log(2.0) + std::lgamma(n + 1.0) - log_s3 - std::lgamma(n + alpha + 1.0));
            g[n] = std::exp(log_norm) * common * l0;
            const double l1 = ((2.0 * n + 1.0 + alpha - t) * l0 - (n + alpha) * lm1) / (n + 1.0);
            lm1 = l0;
            l0 = l1;
        }
        return g;
    }

    [[nodiscard]] double eval(int n, double r) const {
        if (n < 0 || n >= n_max) throw std::out_of_range("RadialBasis::eval: n out of range");
        return eval_all(r)[n];
    }

    /// Radial rule matched to this family; order defaults to max(4 n_max, 40).
    [[nodiscard]] RadialRule quadrature(int order = 0) const {
        return RadialRule::make(order > 0 ? order : std::max(4 * n_max, 40), scale, lambda);
    }
};

/// A finite angular index set plus a radial truncation: one candidate Hilbert space.
class BasisSpec {
public:
    BasisSpec(std::vector<AngularIndex> angular, RadialBasis radial)
        : angular_(std::move(angular)), radial_(radial) {
        for (const auto& idx : angular_) require_valid(idx);
        std::sort(angular_.begin(), angular_.end());
        if (std::adjacent_find(angular_.begin(), angular_.end()) != angular_.end()) {
            throw std::invalid_argument("BasisSpec: duplicate angular index");
        }
        RadialBasis::make(radial_.n_max, radial_.scale, radial_.lambda);
    }

    /// All (l, m) with l <= max_l.
    static BasisSpec full(int max_l, RadialBasis radial) {
        return filtered(max_l, radial, [](int) { return true; });
    }
    /// Even l only, full multiplets.
    static BasisSpec even_l(int max_l, RadialBasis radial) {
        return filtered(max_l, radial, [](int l) { return l % 2 == 0; });
    }
    /// Odd l only, full multiplets.
    static BasisSpec odd_l(int max_l, RadialBasis radial) {
        return filtered(max_l, radial, [](int l) { return l % 2 == 1; });
    }

    [[nodiscard]] const std::vector<AngularIndex>& angular() const { return angular_; }
    [[nodiscard]] const RadialBasis& radial() const { return radial_; }
    [[nodiscard]] int n_max() const { return radial_.n_max; }
    [[nodiscard]] std::size_t size() const { return angular_.size() * static_cast<std::size_t>(n_max()); }
    [[nodiscard]] bool empty() const { return angular_.empty(); }
    [[nodiscard]] int max_l() const { return angular_.empty() ? 0 : angular_.back().l; }

    [[nodiscard]] bool contains(const AngularIndex& idx) const {
        return std::binary_search(angular_.begin(), angular_.end(), idx);
    }

    /// Flat coefficient position of (idx, n): angular-major, radial-minor.
    [[nodiscard]] std::optional<std::size_t> position(const AngularIndex& idx, int n) const {
        if (n < 0 || n >= n_max()) return std::nullopt;
        const auto it = std::lower_bound(angular_.begin(), angular_.end(), idx);
        if (it == angular_.end() || *it != idx) return std::nullopt;
        return static_cast<std::size_t>(it - angular_.begin()) * n_max() + n;
    }

    [[nodiscard]] AngularIndex angular_at(std::size_t pos) const { return angular_[pos / n_max()]; }
    [[nodiscard]] int radial_at(std::size_t pos) const { return static_cast<int>(pos % n_max()); }

    bool operator==(const BasisSpec&) const = default;

private:
    template <class Pred>
    static BasisSpec filtered(int max_l, RadialBasis radial, Pred keep_l) {
        if (max_l < 0) throw std::invalid_argument("BasisSpec: max_l must be non-negative");
        std::vector<AngularIndex> idx;
        for (int l = 0; l <= max_l; ++l) {
            if (!keep_l(l)) continue;
            for (int m = -l; m <= l; ++m) idx.push_back({l, m});
        }
        return {std::move(idx), radial};
    }

    std::vector<AngularIndex> angular_;
    RadialBasis radial_;
};

/// Coefficients a_lmn over a BasisSpec, stored in BasisSpec::position order.
class WaveExpansion {
public:
    explicit WaveExpansion(BasisSpec spec)
        : spec_(std::move(spec)), coeffs_(Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(spec_.size()))) {}

    WaveExpansion(BasisSpec spec, Eigen::VectorXcd coeffs) : spec_(std::move(spec)), coeffs_(std::move(coeffs)) {
        if (static_cast<std::size_t>(coeffs_.size()) != spec_.size()) {
            throw std::invalid_argument("WaveExpansion: coefficient count does not match basis");
        }
    }

    [[nodiscard]] const BasisSpec& spec() const { return spec_; }
    [[nodiscard]] const Eigen::VectorXcd& coeffs() const { return coeffs_; }
    [[nodiscard]] Eigen::VectorXcd& coeffs() { return coeffs_; }

    [[nodiscard]] cplx coeff(const AngularIndex& idx, int n) const {
        return coeffs_(static_cast<Eigen::Index>(checked(idx, n)));
    }
    void set(const AngularIndex& idx, int n, cplx value) {
        coeffs_(static_cast<Eigen::Index>(checked(idx, n))) = value;
    }

    [[nodiscard]] double norm() const { return coeffs_.norm(); }

private:
    [[nodiscard]] std::size_t checked(const AngularIndex& idx, int n) const {
        const auto pos = spec_.position(idx, n);
        if (!pos) {
            throw std::out_of_range("WaveExpansion: (" + std::to_string(idx.l) + "," + std::to_string(idx.m) +
                                    "," + std::to_string(n) + ") not in basis");
        }
        return *pos;
    }

    BasisSpec spec_;
    Eigen::VectorXcd coeffs_;
};

/// psi from precomputed radial values g[n] and a harmonic table of degree >= max_l.
inline cplx evaluate_tables(const WaveExpansion& w, const std::vector<double>& g, const HarmonicTable& y) {
    const BasisSpec& spec = w.spec();
    const int nm = spec.n_max();
    cplx s{0.0, 0.0};
    const auto& ang = spec.angular();
    for (std::size_t a = 0; a < ang.size(); ++a) {
        cplx radial_sum{0.0, 0.0};
        for (int n = 0; n < nm; ++n) radial_sum += w.coeffs()(static_cast<Eigen::Index>(a * nm + n)) * g[n];
        s += radial_sum * y(ang[a]);
    }
    return s;
}

/// psi at (r, direction) from cached cos/sin of theta.
inline cplx evaluate_cs(const WaveExpansion& w, double r, double cos_theta, double sin_theta, double phi) {
    const BasisSpec& spec = w.spec();
    if (spec.empty()) return {0.0, 0.0};
    return evaluate_tables(w, spec.radial().eval_all(r), HarmonicTable(spec.max_l(), cos_theta, sin_theta, phi));
}

/// psi(r, theta, phi); defined on the whole sphere.
inline cplx evaluate(const WaveExpansion& w, double r, double theta, double phi) {
    if (!(r >= 0.0)) throw std::domain_error("evaluate: negative radius");
    return evaluate_cs(w, r, std::cos(theta), std::sin(theta), phi);
}

/// psi at a Cartesian relative vector (no canonicalization applied).
inline cplx evaluate(const WaveExpansion& w, const Vec3& v) {
    const double rho = std::hypot(v.x, v.y);
    const double r = std::hypot(rho, v.z);
    if (r == 0.0) return evaluate_cs(w, 0.0, 1.0, 0.0, 0.0);
    return evaluate_cs(w, r, v.z / r, rho / r, std::atan2(v.y, v.x));
}

struct ProjectionResult {
    WaveExpansion expansion;
    double residual;  ///< || f - evaluate(expansion) || over full space
    double f_norm;    ///< || f ||
};

/// Full-space quadrature: radial rule x full-sphere rule.
struct SpaceQuadrature {
    RadialRule radial;
    QuadratureRule angular;

    static SpaceQuadrature full(const RadialBasis& basis, AngularOrders orders, int radial_order = 0) {
        return {basis.quadrature(radial_order), full_sphere_rule(orders.n_theta, orders.n_phi)};
    }
    static SpaceQuadrature half(const RadialBasis& basis, AngularOrders orders, int radial_order = 0) {
        return {basis.quadrature(radial_order), half_space_rule(orders.n_theta, orders.n_phi)};
    }
};

/// a_lmn = <g_n Y_lm, f> over full space. f: callable (r, theta, phi) -> complex.
template <class F>
ProjectionResult project(F&& f, const BasisSpec& spec, std::optional<AngularOrders> orders = std::nullopt) {
    const AngularOrders ord = orders.value_or(AngularOrders::for_degree(std::max(spec.max_l(), 1)));
    const SpaceQuadrature q = SpaceQuadrature::full(spec.radial(), ord);
    const int nm = spec.n_max();
    const auto& ang = spec.angular();
    const int max_l = spec.max_l();

    struct Sample {
        cplx f;
        double weight;
        double r;
        const AngularNode* node;
    };
    std::vector<Sample> samples;
    samples.reserve(q.radial.nodes.size() * q.angular.nodes.size());

    WaveExpansion w(spec);
    for (std::size_t k = 0; k < q.radial.nodes.size(); ++k) {
        const double r = q.radial.nodes[k];
        const std::vector<double> g = spec.radial().eval_all(r);
        for (const auto& node : q.angular.nodes) {
            const cplx fv = f(r, node.theta, node.phi);
            const double wt = q.radial.weights[k] * node.weight;
            samples.push_back({fv, wt, r, &node});
            if (ang.empty()) continue;
            const HarmonicTable y(max_l, node.cos_theta, node.sin_theta, node.phi);
            for (std::size_t a = 0; a < ang.size(); ++a) {
                const cplx yc = std::conj(y(ang[a])) * fv * wt;
                for (int n = 0; n < nm; ++n) w.coeffs()(static_cast<Eigen::Index>(a * nm + n)) += g[n] * yc;
            }
        }
    }

    double f2 = 0.0;
    double res2 = 0.0;
    for (const auto& s : samples) {
        const cplx approx = evaluate_cs(w, s.r, s.node->cos_theta, s.node->sin_theta, s.node->phi);
        f2 += std::norm(s.f) * s.weight;
        res2 += std::norm(s.f - approx) * s.weight;
    }
    return {std::move(w), std::sqrt(res2), std::sqrt(f2)};
}

/// int |psi|^2 d^3r by quadrature; full space or half-space depending on the rule.
inline double quadrature_norm_squared(const WaveExpansion& w, const SpaceQuadrature& q) {
    double s = 0.0;
    for (std::size_t k = 0; k < q.radial.nodes.size(); ++k) {
        for (const auto& node : q.angular.nodes) {
            const cplx v = evaluate_cs(w, q.radial.nodes[k], node.cos_theta, node.sin_theta, node.phi);
            s += std::norm(v) * q.radial.weights[k] * node.weight;
        }
    }
    return s;
}

/// Behaviour of the full-space continuation under r -> -r, i.e. under labeled exchange.
enum class ExchangeParity { even, odd, mixed };

inline std::string to_string(ExchangeParity p) {
    switch (p) {
        case ExchangeParity::even: return "even";
        case ExchangeParity::odd: return "odd";
        case ExchangeParity::mixed: return "mixed";
    }
    return "unknown";
}

/// Classifies the populated l values. A coefficient counts as populated when its
/// magnitude exceeds rel_tol * ||a||. The zero expansion is even.
inline ExchangeParity conventional_exchange_parity(const WaveExpansion& w, double rel_tol = 1e-12) {
    const double cut = rel_tol * w.norm();
    bool any_even = false;
    bool any_odd = false;
    for (std::size_t p = 0; p < w.spec().size(); ++p) {
        if (std::abs(w.coeffs()(static_cast<Eigen::Index>(p))) <= cut) continue;
        (w.spec().angular_at(p).l % 2 == 0 ? any_even : any_odd) = true;
    }
    if (any_even && any_odd) return ExchangeParity::mixed;
    return any_odd ? ExchangeParity::odd : ExchangeParity::even;
}

/// The set of angular indices carrying a populated coefficient.
inline std::set<AngularIndex> populated_channels(const WaveExpansion& w, double rel_tol = 1e-10) {
    std::set<AngularIndex> out;
    const double cut = rel_tol * w.norm();
    for (std::size_t p = 0; p < w.spec().size(); ++p) {
        if (std::abs(w.coeffs()(static_cast<Eigen::Index>(p))) > cut) out.insert(w.spec().angular_at(p));
    }
    return out;
}

/// psi = (x + i y) exp(-r^2) in the relative coordinate: a function of the
/// unordered pair when read on D, with pure l = 1, m = 1 angular content.
inline cplx p_wave_gaussian(double r, double theta, double phi) {
    return r * std::sin(theta) * std::polar(1.0, phi) * std::exp(-r * r);
}

inline cplx p_wave_gaussian(const Vec3& v) {
    return cplx{v.x, v.y} * std::exp(-dot(v, v));
}

/// Radial family containing r exp(-r^2) as g_0: lambda = 1, scale = 1/sqrt(2).
inline RadialBasis p_wave_gaussian_basis(int n_max) {
    return RadialBasis::make(n_max, 1.0 / std::sqrt(2.0), 1);
}

} // namespace pairspace
