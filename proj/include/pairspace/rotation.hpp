// Copyright 2026 The pairspace Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file rotation.hpp
 * @brief Rotation closure of candidate angular bases and seam phase consistency.
 *
 * A space spanned by some Y_lm is rotation invariant only when it holds every
 * m of each l it touches; otherwise rotating a basis element leaks weight onto
 * the missing m and the space depends on the choice of polar axis.
 */

#pragma once

#include "pairspace/configspace.hpp"
#include "pairspace/continuity.hpp"
#include "pairspace/expansion.hpp"
#include "pairspace/harmonics.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace pairspace {

inline constexpr std::uint64_t kDefaultSeed = 42;
inline constexpr double kClosureTolerance = 1e-10;

/// Euler angles with alpha, gamma uniform on [0, 2 pi) and beta uniform on [0, pi].
inline std::vector<EulerAngles> random_rotations(int count, std::uint64_t seed) {
    std::mt19937_64 gen(seed);
    std::uniform_real_distribution<double> turn(0.0, 2.0 * std::numbers::pi);
    std::uniform_real_distribution<double> tilt(0.0, std::numbers::pi);
    std::vector<EulerAngles> out;
    out.reserve(static_cast<std::size_t>(std::max(count, 0)));
    for (int i = 0; i < count; ++i) {
        const double a = turn(gen);
        const double b = tilt(gen);
        const double g = turn(gen);
        out.push_back({a, b, g});
    }
    return out;
}

/// Largest norm that any one Y_lm of the set leaks onto indices outside the set
/// under `rotation`.
inline double closure_defect(const std::vector<AngularIndex>& angular, const EulerAngles& rotation) {
    if (angular.empty()) throw std::invalid_argument("closure_defect: empty index set");
    std::vector<AngularIndex> sorted = angular;
    std::sort(sorted.begin(), sorted.end());
    double worst = 0.0;
    for (const auto& idx : sorted) {
        const AngularCoeffs rotated = wigner_rotate({{idx, 1.0}}, rotation);
        double leak2 = 0.0;
        for (const auto& [out_idx, c] : rotated) {
            if (!std::binary_search(sorted.begin(), sorted.end(), out_idx)) leak2 += std::norm(c);
        }
        worst = std::max(worst, std::sqrt(leak2));
    }
    return worst;
}

inline double closure_defect(const BasisSpec& spec, const EulerAngles& rotation) {
    return closure_defect(spec.angular(), rotation);
}

struct ClosureReport {
    std::string label;
    std::vector<AngularIndex> angular;
    int rotations_tested = 0;
    double max_defect = 0.0;
    bool closed = true;  ///< max_defect < kClosureTolerance
};

inline ClosureReport closure_report(std::string label, const std::vector<AngularIndex>& angular,
                                    const std::vector<EulerAngles>& rotations) {
    ClosureReport rep{std::move(label), angular};
    std::sort(rep.angular.begin(), rep.angular.end());
    rep.rotations_tested = static_cast<int>(rotations.size());
    for (const auto& r : rotations) rep.max_defect = std::max(rep.max_defect, closure_defect(angular, r));
    rep.closed = rep.max_defect < kClosureTolerance;
    return rep;
}

/// True when no index has both l and m odd.
inline bool seam_admissible(const std::vector<AngularIndex>& angular) {
    return std::none_of(angular.begin(), angular.end(),
                        [](const AngularIndex& i) { return i.l % 2 != 0 && i.m % 2 != 0; });
}

/// Candidate index sets for the two-particle relative motion up to degree L.
/// The first entry is the pure even-l space; every other entry mixes even and
/// odd l while avoiding (odd l, odd m), so continuity alone cannot reject it:
///   - "even+l=k/even-m": all even-l multiplets plus odd l = k restricted to even m;
///   - "even+odd-l/even-m": all even-l multiplets plus every odd l restricted to even m;
///   - "odd-l@|m|<=k": for even m with |m| <= k use the odd l >= |m|, for the
///     remaining m use the even l.
inline std::vector<std::pair<std::string, std::vector<AngularIndex>>> mixed_candidates(int max_l) {
    std::vector<std::pair<std::string, std::vector<AngularIndex>>> out;
    std::vector<AngularIndex> even;
    for (int l = 0; l <= max_l; l += 2) {
        for (int m = -l; m <= l; ++m) even.push_back({l, m});
    }
    out.emplace_back("even-l", even);

    std::vector<AngularIndex> all_odd = even;
    for (int k = 1; k <= max_l; k += 2) {
        std::vector<AngularIndex> cand = even;
        for (int m = -k; m <= k; ++m) {
            if (m % 2 == 0) {
                cand.push_back({k, m});
                all_odd.push_back({k, m});
            }
        }
        out.emplace_back("even+l=" + std::to_string(k) + "/even-m", cand);
    }
    if (max_l >= 3) out.emplace_back("even+odd-l/even-m", all_odd);

    // largest odd l available
    const int top_odd = (max_l % 2 == 1) ? max_l : max_l - 1;
    for (int k = 0; k <= top_odd; k += 2) {
        std::vector<AngularIndex> cand;
        for (int l = 0; l <= max_l; ++l) {
            for (int m = -l; m <= l; ++m) {
                const bool odd_sector = (m % 2 == 0) && std::abs(m) <= k;
                if ((l % 2 == 1) == odd_sector) cand.push_back({l, m});
            }
        }
        out.emplace_back("odd-l@|m|<=" + std::to_string(k), cand);
    }
    return out;
}

/// Closure reports for the even-l space and every mixed candidate under
/// `trials` seeded random rotations.
inline std::vector<ClosureReport> mixed_symmetry_exclusion(int max_l, int trials, std::uint64_t seed = kDefaultSeed) {
    if (max_l < 1) throw std::invalid_argument("mixed_symmetry_exclusion: max_l must be >= 1");
    if (trials < 10) throw std::invalid_argument("mixed_symmetry_exclusion: trials must be >= 10");
    if (max_l > kMaxWignerDegree) throw std::invalid_argument("mixed_symmetry_exclusion: max_l too large");
    const std::vector<EulerAngles> rotations = random_rotations(trials, seed);
    std::vector<ClosureReport> out;
    for (const auto& [label, angular] : mixed_candidates(max_l)) {
        out.push_back(closure_report(label, angular, rotations));
    }
    return out;
}

// ----------------------------------------------------------------------------
// Phase consistency at the seam
// ----------------------------------------------------------------------------

inline constexpr double kSeamApproachEps = 1e-14;

struct PhaseRecord {
    bool indeterminate = false;  ///< every sample below the amplitude floor
    bool consistent = false;     ///< all ratios equal and of unit modulus within tolerance
    double delta = 0.0;          ///< common phase in (-pi/2, 3pi/2], when consistent
    double inconsistency = 0.0;  ///< spread of the ratios
    int samples_used = 0;
};

/// Compares psi at r u+ and r u- with u+- = (+-x, +-y, eps)/norm, for each seam
/// direction (x, y, .) in `directions` and a grid of radii. The two points
/// approach the same unordered pair as eps -> 0. Consistency means the ratio
/// psi(r u-) / psi(r u+) is one unit-modulus constant e^{i delta}.
inline PhaseRecord phase_consistency(const WaveExpansion& w, const std::vector<HalfSpaceVector>& directions,
                                     double eps = kSeamApproachEps, int n_radii = 16, double tol = 1e-6) {
    if (w.norm() == 0.0) throw std::invalid_argument("phase_consistency: zero expansion");
    if (!(eps > 0.0)) throw std::domain_error("phase_consistency: eps must be positive");
    if (directions.empty()) throw std::invalid_argument("phase_consistency: no directions");
    const double floor = 1e-12 * w.norm();
    const std::vector<double> radii = seam_sample_radii(w.spec().radial(), n_radii);

    std::vector<cplx> ratios;
    bool one_sided = false;
    for (const auto& d : directions) {
        const double rho = std::hypot(d.x(), d.y());
        if (rho == 0.0) throw std::domain_error("phase_consistency: direction has no transverse component");
        const Vec3 up = Vec3{d.x() / rho, d.y() / rho, eps} * (1.0 / std::hypot(1.0, eps));
        const Vec3 down{-up.x, -up.y, up.z};
        for (const double r : radii) {
            const cplx a = evaluate(w, up * r);
            const cplx b = evaluate(w, down * r);
            const bool small_a = std::abs(a) < floor;
            const bool small_b = std::abs(b) < floor;
            if (small_a && small_b) continue;
            if (small_a || small_b) {
                one_sided = true;
                continue;
            }
            ratios.push_back(b / a);
        }
    }

    PhaseRecord rec;
    rec.samples_used = static_cast<int>(ratios.size()) + (one_sided ? 1 : 0);
    if (ratios.empty() && !one_sided) {
        rec.indeterminate = true;
        return rec;
    }
    cplx mean{0.0, 0.0};
    for (const auto& q : ratios) mean += q;
    if (!ratios.empty()) mean /= static_cast<double>(ratios.size());
    double spread = one_sided ? 1.0 : 0.0;
    for (const auto& q : ratios) {
        spread = std::max(spread, std::abs(q - mean));
        spread = std::max(spread, std::abs(std::abs(q) - 1.0));
    }
    rec.inconsistency = spread;
    rec.consistent = spread <= tol;
    if (rec.consistent) {
        double d = std::arg(mean);
        if (d <= -std::numbers::pi / 2) d += 2.0 * std::numbers::pi;
        rec.delta = d;
    }
    return rec;
}

inline PhaseRecord phase_consistency(const WaveExpansion& w, const HalfSpaceVector& r_hat,
                                     double eps = kSeamApproachEps, int n_radii = 16, double tol = 1e-6) {
    return phase_consistency(w, std::vector<HalfSpaceVector>{r_hat}, eps, n_radii, tol);
}

/// `count` seam directions evenly spread over the upper half of the equator
/// (phi in [0, pi)), each lifted by `lift` above the plane.
inline std::vector<HalfSpaceVector> seam_directions(int count, double lift = 1e-3) {
    std::vector<HalfSpaceVector> out;
    for (int k = 0; k < count; ++k) {
        const double phi = std::numbers::pi * (k + 0.5) / count;
        out.push_back(HalfSpaceVector::make({std::cos(phi), std::sin(phi), lift}));
    }
    return out;
}

} // namespace pairspace
