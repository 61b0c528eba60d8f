// Copyright 2026 The pairspace Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file configspace.hpp
 * @brief Unordered pairs of points as (center of mass, half-space relative vector).
 *
 * An unordered pair {r1, r2} is represented one-to-one by R = (r1 + r2)/2 and a
 * relative vector confined to the half-space
 *
 *     D = [z > 0] + [z = 0, y > 0] + [y = z = 0, x >= 0].
 *
 * The relative vector is r2 - r1 when r2 follows r1 in the lexicographic order
 * (z, then y, then x) and r1 - r2 otherwise. All branch predicates are evaluated
 * on the raw doubles with no tolerance, so domain membership is a total,
 * deterministic function and canonicalization is exactly exchange invariant.
 */

#pragma once

#include "pairspace/vec3.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>

namespace pairspace {

/// Two labeled points; the conventional distinguishable-particle configuration.
struct OrderedPair {
    Vec3 r1;
    Vec3 r2;

    constexpr bool operator==(const OrderedPair&) const = default;

    [[nodiscard]] constexpr OrderedPair swapped() const { return {r2, r1}; }
};

/// True iff v lies in the half-space domain D.
constexpr bool in_domain(const Vec3& v) {
    return v.z > 0.0 || (v.z == 0.0 && v.y > 0.0) || (v.z == 0.0 && v.y == 0.0 && v.x >= 0.0);
}

/// Relative coordinate constrained to D. Construction validates membership.
class HalfSpaceVector {
public:
    /// Throws std::domain_error when v is outside D or not finite.
    static HalfSpaceVector make(const Vec3& v) {
        if (!v.is_finite()) {
            throw std::domain_error("HalfSpaceVector: non-finite component");
        }
        if (!in_domain(v)) {
            throw std::domain_error("HalfSpaceVector: vector outside the half-space domain");
        }
        return HalfSpaceVector(v);
    }

    static std::optional<HalfSpaceVector> try_make(const Vec3& v) {
        if (!v.is_finite() || !in_domain(v)) return std::nullopt;
        return HalfSpaceVector(v);
    }

    /// Representative in D of the axis through v: v itself or -v.
    static HalfSpaceVector representative(const Vec3& v) {
        return make(in_domain(v) ? v : -v);
    }

    [[nodiscard]] constexpr const Vec3& vec() const { return v_; }
    [[nodiscard]] constexpr double x() const { return v_.x; }
    [[nodiscard]] constexpr double y() const { return v_.y; }
    [[nodiscard]] constexpr double z() const { return v_.z; }
    [[nodiscard]] bool is_zero() const { return v_.x == 0.0 && v_.y == 0.0 && v_.z == 0.0; }

    constexpr bool operator==(const HalfSpaceVector&) const = default;

private:
    constexpr explicit HalfSpaceVector(const Vec3& v) : v_(v) {}
    Vec3 v_;
};

/// Center of mass plus canonical relative vector.
struct PairCoords {
    Vec3 R;
    HalfSpaceVector rel;

    bool operator==(const PairCoords&) const = default;
};

/// Polar angles of an axis. theta in [0, pi/2]; phi in [0, 2pi), or [0, pi) on the equator.
struct PolarAngles {
    double theta = 0.0;
    double phi = 0.0;
};

/// Spherical decomposition of a half-space vector. `degenerate` marks the zero
/// vector, for which the angles are conventionally zero and carry no meaning.
struct PolarCoords {
    double r = 0.0;
    PolarAngles angles;
    bool degenerate = false;
};

namespace detail {

// True when r2 follows r1 in the (z, y, x) lexicographic order, ties on x included.
constexpr bool follows(const Vec3& r1, const Vec3& r2) {
    return r2.z > r1.z || (r2.z == r1.z && r2.y > r1.y) ||
           (r2.z == r1.z && r2.y == r1.y && r2.x >= r1.x);
}

} // namespace detail

/// Maps an ordered pair onto (R, rel). canonicalize(p) == canonicalize(p.swapped()) bitwise.
inline PairCoords canonicalize(const OrderedPair& p) {
    if (!p.r1.is_finite() || !p.r2.is_finite()) {
        throw std::domain_error("canonicalize: non-finite input component");
    }
    const Vec3 R = (p.r1 + p.r2) * 0.5;
    const Vec3 rel = detail::follows(p.r1, p.r2) ? p.r2 - p.r1 : p.r1 - p.r2;
    if (!R.is_finite() || !rel.is_finite()) {
        throw std::domain_error("canonicalize: coordinates overflow");
    }
    return {R, HalfSpaceVector::make(rel)};
}

/// Recovers the two points {R - rel/2, R + rel/2}, returned in canonical order.
inline OrderedPair invert(const PairCoords& c) {
    const Vec3& rel = c.rel.vec();
    if (!in_domain(rel)) {
        throw std::domain_error("invert: relative vector outside the half-space domain");
    }
    const Vec3 half = rel * 0.5;
    return {c.R - half, c.R + half};
}

/// Returns true if the two pairs describe the same unordered set of points.
constexpr bool same_unordered(const OrderedPair& a, const OrderedPair& b) {
    return (a.r1 == b.r1 && a.r2 == b.r2) || (a.r1 == b.r2 && a.r2 == b.r1);
}

inline PolarCoords to_polar(const HalfSpaceVector& v) {
    if (v.is_zero()) {
        return {0.0, {0.0, 0.0}, true};
    }
    const double rho = std::hypot(v.x(), v.y());
    const double r = std::hypot(rho, v.z());
    const double theta = std::atan2(rho, v.z());
    double phi = 0.0;
    if (rho > 0.0) {
        phi = std::atan2(v.y(), v.x());
        if (phi < 0.0) phi += 2.0 * std::numbers::pi;
        if (phi >= 2.0 * std::numbers::pi) phi = 0.0;
    }
    return {r, {theta, phi}, false};
}

/// Inverse of to_polar. The result is mapped back onto D, so equatorial round-off
/// cannot push it across the seam.
inline HalfSpaceVector from_polar(double r, const PolarAngles& a) {
    if (!(r >= 0.0)) {
        throw std::domain_error("from_polar: negative radius");
    }
    const double st = std::sin(a.theta);
    Vec3 v{r * st * std::cos(a.phi), r * st * std::sin(a.phi), r * std::cos(a.theta)};
    if (std::abs(v.z) <= 4.0 * std::numeric_limits<double>::epsilon() * r) v.z = 0.0;
    return HalfSpaceVector::representative(v);
}

/// Canonical relative vector of the neighbouring unordered pair across the seam:
/// (2x, 2y, eps) -> (-2x, -2y, eps).
inline HalfSpaceVector seam_partner(const HalfSpaceVector& v, double eps) {
    if (!(eps > 0.0)) {
        throw std::domain_error("seam_partner: eps must be positive");
    }
    if (v.z() != eps) {
        throw std::domain_error("seam_partner: v.z must equal eps");
    }
    return HalfSpaceVector::make({-v.x(), -v.y(), eps});
}

} // namespace pairspace
