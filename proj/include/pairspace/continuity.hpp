// Copyright 2026 The pairspace Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file continuity.hpp
 * @brief Seam-continuity constraints on expansion coefficients.
 *
 * Approaching the z = 0 plane, the relative vectors (x, y, +eps) and
 * (-x, -y, +eps) belong to neighbouring unordered pairs. Continuity of the wave
 * function therefore requires psi(r, pi/2, phi + pi) = psi(r, pi/2, phi), which in
 * coefficients reads
 *
 *     sum a_lmn g_n(r) ((-1)^m - 1) Y_lm(pi/2, phi) = 0.
 *
 * Only odd m contribute, and Y_lm(pi/2, .) vanishes for odd (l - m), so the
 * terms that can break continuity are exactly those with l odd and m odd.
 *
 * Two discretizations of the constraint are provided. `per_channel` samples
 * the functional separately in every l-channel, i.e. demands that each
 * (l, m) term be continuous on its own; its null space is the coordinate
 * subspace {not (l odd and m odd)}. `aggregate` samples the summed functional;
 * on the equator all Y_lm with the same m are proportional, so it only sees
 * one constraint per odd m and admits cross-l cancellations.
 */

#pragma once

#include "pairspace/configspace.hpp"
#include "pairspace/expansion.hpp"
#include "pairspace/harmonics.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SVD>

namespace pairspace {

enum class SeamResolution { per_channel, aggregate };

inline std::string to_string(SeamResolution r) {
    return r == SeamResolution::per_channel ? "per_channel" : "aggregate";
}

/// Sample radii for seam checks: `count` points spread over [0.1, 4] basis scales.
inline std::vector<double> seam_sample_radii(const RadialBasis& radial, int count) {
    std::vector<double> r(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
        const double f = count > 1 ? double(i) / (count - 1) : 0.5;
        r[i] = radial.scale * (0.1 + 3.9 * f);
    }
    return r;
}

/// max over sampled (r, phi) of |psi(r, pi/2, phi + pi) - psi(r, pi/2, phi)|.
/// `samples` points in phi over [0, 2 pi) and `samples` radii.
inline double seam_residual(const WaveExpansion& w, int samples) {
    if (samples < 8) throw std::invalid_argument("seam_residual: need at least 8 samples");
    const std::vector<double> radii = seam_sample_radii(w.spec().radial(), samples);
    double worst = 0.0;
    for (const double r : radii) {
        for (int j = 0; j < samples; ++j) {
            const double phi = 2.0 * std::numbers::pi * j / samples;
            const cplx a = evaluate_cs(w, r, 0.0, 1.0, phi + std::numbers::pi);
            const cplx b = evaluate_cs(w, r, 0.0, 1.0, phi);
            worst = std::max(worst, std::abs(a - b));
        }
    }
    return worst;
}

/// Continuity verdict used throughout: residual <= 1e-10 ||a||.
inline bool seam_continuous(const WaveExpansion& w, int samples = 32) {
    return seam_residual(w, samples) <= 1e-10 * w.norm();
}

/// Sampled seam constraints together with their SVD-derived null space.
struct ConstraintSystem {
    BasisSpec spec;
    SeamResolution resolution = SeamResolution::per_channel;
    Eigen::MatrixXcd rows{};               ///< samples x coefficients
    Eigen::VectorXd singular_values{};     ///< descending
    double svd_tol = 1e-10;
    int rank = 0;
    int nullspace_dim = 0;
    Eigen::MatrixXcd null_basis{};         ///< orthonormal columns spanning the null space
    std::vector<std::size_t> allowed{};    ///< coefficient positions inside the null space
    std::vector<std::size_t> forced{};     ///< coefficient positions orthogonal to it
    std::vector<std::size_t> coupled{};    ///< positions only partially in the null space

    /// Smallest retained singular value over the largest, 0 when rank is 0.
    [[nodiscard]] double svd_gap() const {
        if (rank == 0) return 0.0;
        return singular_values(rank - 1) / singular_values(0);
    }
    /// Largest discarded singular value over the largest, 0 when none is discarded.
    [[nodiscard]] double largest_discarded() const {
        if (rank == 0 || rank >= singular_values.size()) return 0.0;
        return singular_values(rank) / singular_values(0);
    }
    /// Spectral norm of the sampled constraint operator.
    [[nodiscard]] double operator_norm() const {
        return singular_values.size() ? singular_values(0) : 0.0;
    }
};

namespace detail {

inline void analyze_null_space(ConstraintSystem& sys) {
    const Eigen::Index n = sys.rows.cols();
    if (n == 0) return;
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(sys.rows, Eigen::ComputeFullV);
    sys.singular_values = svd.singularValues();
    const double smax = sys.singular_values.size() ? sys.singular_values(0) : 0.0;
    int rank = 0;
    for (Eigen::Index i = 0; i < sys.singular_values.size(); ++i) {
        if (smax > 0.0 && sys.singular_values(i) > sys.svd_tol * smax) ++rank;
    }
    sys.rank = rank;
    sys.nullspace_dim = static_cast<int>(n) - rank;
    sys.null_basis = svd.matrixV().rightCols(sys.nullspace_dim);

    for (Eigen::Index p = 0; p < n; ++p) {
        const double inside = sys.null_basis.row(p).squaredNorm();
        const auto pos = static_cast<std::size_t>(p);
        if (inside >= 1.0 - 1e-8) {
            sys.allowed.push_back(pos);
        } else if (inside <= 1e-8) {
            sys.forced.push_back(pos);
        } else {
            sys.coupled.push_back(pos);
        }
    }
}

} // namespace detail

/// Builds and analyses the sampled seam constraints for `spec`.
/// Requires n_phi_samples >= 2 max|m| + 1 and n_r_samples >= n_max.
inline ConstraintSystem build_constraints(const BasisSpec& spec, int n_phi_samples, int n_r_samples,
                                          double svd_tol = 1e-10,
                                          SeamResolution resolution = SeamResolution::per_channel) {
    int max_abs_m = 0;
    for (const auto& idx : spec.angular()) max_abs_m = std::max(max_abs_m, std::abs(idx.m));
    if (n_phi_samples < 2 * max_abs_m + 1) {
        throw std::invalid_argument("build_constraints: n_phi_samples must be >= 2 max|m| + 1 (got " +
                                    std::to_string(n_phi_samples) + ", need " +
                                    std::to_string(2 * max_abs_m + 1) + ")");
    }
    if (n_r_samples < spec.n_max()) {
        throw std::invalid_argument("build_constraints: n_r_samples must be >= n_max");
    }
    if (!(svd_tol > 0.0)) throw std::invalid_argument("build_constraints: svd_tol must be positive");

    ConstraintSystem sys{spec, resolution};
    sys.svd_tol = svd_tol;

    std::vector<int> channels;
    if (resolution == SeamResolution::per_channel) {
        for (const auto& idx : spec.angular()) {
            if (channels.empty() || channels.back() != idx.l) channels.push_back(idx.l);
        }
    } else {
        channels.push_back(-1);  // one block covering every l
    }

    const std::vector<double> radii = seam_sample_radii(spec.radial(), n_r_samples);
    const auto n_cols = static_cast<Eigen::Index>(spec.size());
    const auto n_rows = static_cast<Eigen::Index>(channels.size() * radii.size() * n_phi_samples);
    sys.rows = Eigen::MatrixXcd::Zero(n_rows, n_cols);
    if (spec.empty()) return sys;

    const int max_l = spec.max_l();
    const int nm = spec.n_max();
    Eigen::Index row = 0;
    for (const int channel : channels) {
        for (const double r : radii) {
            const std::vector<double> g = spec.radial().eval_all(r);
            for (int j = 0; j < n_phi_samples; ++j) {
                const double phi = 2.0 * std::numbers::pi * j / n_phi_samples;
                // exact cos(theta) = 0: Y_lm(pi/2, .) is exactly zero for odd (l - m)
                const HarmonicTable y(max_l, 0.0, 1.0, phi);
                for (std::size_t a = 0; a < spec.angular().size(); ++a) {
                    const AngularIndex idx = spec.angular()[a];
                    if (channel >= 0 && idx.l != channel) continue;
                    const double jump = phi_shift_factor(idx) - 1.0;
                    if (jump == 0.0) continue;
                    for (int n = 0; n < nm; ++n) {
                        sys.rows(row, static_cast<Eigen::Index>(a * nm + n)) = g[n] * jump * y(idx);
                    }
                }
                ++row;
            }
        }
    }
    detail::analyze_null_space(sys);
    return sys;
}

/// Sampling used by default: twice the minimum in phi, n_max + 2 radii.
inline ConstraintSystem build_constraints(const BasisSpec& spec, double svd_tol = 1e-10,
                                          SeamResolution resolution = SeamResolution::per_channel) {
    int max_abs_m = 0;
    for (const auto& idx : spec.angular()) max_abs_m = std::max(max_abs_m, std::abs(idx.m));
    return build_constraints(spec, 2 * (2 * max_abs_m + 1), spec.n_max() + 2, svd_tol, resolution);
}

/// Largest principal angle (radians) between the column spans of two matrices
/// with orthonormal columns. pi/2 when the dimensions differ.
inline double max_principal_angle(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
    if (a.cols() != b.cols() || a.rows() != b.rows()) return std::numbers::pi / 2;
    if (a.cols() == 0) return 0.0;
    // sine of the largest angle = || (I - B B^H) A ||_2, accurate for small angles
    const Eigen::MatrixXcd residual = a - b * (b.adjoint() * a);
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(residual);
    return std::asin(std::min(1.0, svd.singularValues()(0)));
}

/// Orthonormal basis of the coordinate subspace spanned by the given positions.
inline Eigen::MatrixXcd coordinate_basis(std::size_t dim, const std::vector<std::size_t>& positions) {
    Eigen::MatrixXcd e = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(dim),
                                                static_cast<Eigen::Index>(positions.size()));
    for (std::size_t k = 0; k < positions.size(); ++k) {
        e(static_cast<Eigen::Index>(positions[k]), static_cast<Eigen::Index>(k)) = 1.0;
    }
    return e;
}

/// Closed-form continuity rule: a channel survives unless l and m are both odd.
inline constexpr bool seam_rule_allows(const AngularIndex& idx) { return idx.l % 2 == 0 || idx.m % 2 == 0; }

/// Coefficient positions of `spec` that the closed-form rule allows.
inline std::vector<std::size_t> seam_rule_positions(const BasisSpec& spec) {
    std::vector<std::size_t> out;
    for (std::size_t p = 0; p < spec.size(); ++p) {
        if (seam_rule_allows(spec.angular_at(p))) out.push_back(p);
    }
    return out;
}

/// Largest principal angle between the SVD null space of `sys` and the span
/// the closed-form rule predicts.
inline double rule_principal_angle(const ConstraintSystem& sys) {
    const std::vector<std::size_t> rule = seam_rule_positions(sys.spec);
    return max_principal_angle(sys.null_basis, coordinate_basis(sys.spec.size(), rule));
}

/// Outcome of the odd-l sector analysis.
struct FermionExclusionReport {
    BasisSpec spec;
    std::vector<AngularIndex> forced_zero{};  ///< every radial channel forced to zero
    std::vector<AngularIndex> surviving{};    ///< every radial channel allowed
    int nullspace_dim = 0;
    int total = 0;
    double svd_gap = 0.0;
    /// max over equator samples and unit-norm members w of the surviving span of |psi_w|
    double equator_max = 0.0;
    int equator_samples = 0;
};

/// Largest |psi(r, pi/2, phi)| over unit-norm coefficient vectors in span(basis),
/// maximized over `samples` phi values and `samples` radii.
inline double equator_span_max(const BasisSpec& spec, const Eigen::MatrixXcd& basis, int samples) {
    if (basis.cols() == 0 || spec.empty()) return 0.0;
    const std::vector<double> radii = seam_sample_radii(spec.radial(), samples);
    const int nm = spec.n_max();
    double worst = 0.0;
    Eigen::VectorXcd v(static_cast<Eigen::Index>(spec.size()));
    for (const double r : radii) {
        const std::vector<double> g = spec.radial().eval_all(r);
        for (int j = 0; j < samples; ++j) {
            const double phi = 2.0 * std::numbers::pi * j / samples;
            const HarmonicTable y(spec.max_l(), std::cos(std::numbers::pi / 2), 1.0, phi);
            for (std::size_t a = 0; a < spec.angular().size(); ++a) {
                for (int n = 0; n < nm; ++n) v(static_cast<Eigen::Index>(a * nm + n)) = g[n] * y(spec.angular()[a]);
            }
            // psi = v^T B x, maximized over unit x
            worst = std::max(worst, (basis.transpose() * v).norm());
        }
    }
    return worst;
}

/// Seam analysis of the odd-l-only space up to `max_l`: which coefficients
/// continuity forces to zero, which survive, and whether every survivor
/// vanishes on the relative z = 0 plane.
inline FermionExclusionReport fermion_exclusion_report(int max_l, int n_max, double svd_tol = 1e-10,
                                                       int equator_samples = 64) {
    if (max_l < 0) throw std::invalid_argument("fermion_exclusion_report: max_l must be non-negative");
    const BasisSpec spec = BasisSpec::odd_l(max_l, RadialBasis::oscillator(n_max));
    FermionExclusionReport rep{spec};
    rep.total = static_cast<int>(spec.size());
    rep.equator_samples = equator_samples;
    if (spec.empty()) return rep;

    const ConstraintSystem sys = build_constraints(spec, svd_tol);
    rep.nullspace_dim = sys.nullspace_dim;
    rep.svd_gap = sys.svd_gap();
    for (const auto& idx : spec.angular()) {
        bool all_allowed = true;
        bool all_forced = true;
        for (int n = 0; n < spec.n_max(); ++n) {
            const std::size_t p = *spec.position(idx, n);
            all_allowed &= std::find(sys.allowed.begin(), sys.allowed.end(), p) != sys.allowed.end();
            all_forced &= std::find(sys.forced.begin(), sys.forced.end(), p) != sys.forced.end();
        }
        if (all_forced) rep.forced_zero.push_back(idx);
        if (all_allowed) rep.surviving.push_back(idx);
    }
    rep.equator_max = equator_span_max(spec, sys.null_basis, equator_samples);
    return rep;
}

// ----------------------------------------------------------------------------
// Kinetic-energy divergence of discontinuous functions
// ----------------------------------------------------------------------------

struct EnergyLevel {
    double h;
    double kinetic_energy;
};

struct EnergyDemoResult {
    std::vector<EnergyLevel> levels;
    std::vector<double> ratios;       ///< E(h_{k+1}) / E(h_k)
    double growth_threshold = 1.8;
    double convergence_tol = 0.05;
    bool monotone = false;            ///< every ratio > 1
    bool divergent = false;           ///< every ratio >= growth_threshold
    bool converged = false;           ///< last relative change < convergence_tol
    [[nodiscard]] double last_relative_change() const {
        if (levels.size() < 2) return 0.0;
        const double a = levels[levels.size() - 2].kinetic_energy;
        const double b = levels.back().kinetic_energy;
        return std::abs(b - a) / std::max(std::abs(b), 1e-300);
    }
};

struct EnergyGridOptions {
    double box_half_width = 4.0;
    double growth_threshold = 1.8;
    double convergence_tol = 0.05;
};

/// sum over interior grid points of |grad f|^2 h^3, centered differences, on
/// [-L, L]^3. `f` is called with the canonical representative in D of each
/// grid vector, so a function that is discontinuous on the identified space
/// shows its jump across z = 0.
template <class F>
double grid_kinetic_energy(F&& f, double h, double half_width) {
    const double cells = 2.0 * half_width / h;
    const long n_cells = std::lround(cells);
    if (n_cells < 2 || std::abs(cells - double(n_cells)) > 1e-9 * cells) {
        throw std::invalid_argument("grid_kinetic_energy: box width must be a multiple of h");
    }
    const std::size_t n = static_cast<std::size_t>(n_cells) + 1;
    std::vector<cplx> grid(n * n * n);
    auto at = [n](std::size_t i, std::size_t j, std::size_t k) { return (i * n + j) * n + k; };
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            for (std::size_t k = 0; k < n; ++k) {
                const Vec3 v{-half_width + double(i) * h, -half_width + double(j) * h, -half_width + double(k) * h};
                grid[at(i, j, k)] = f(HalfSpaceVector::representative(v));
            }
        }
    }
    const double inv = 1.0 / (2.0 * h);
    double sum = 0.0;
    for (std::size_t i = 1; i + 1 < n; ++i) {
        for (std::size_t j = 1; j + 1 < n; ++j) {
            for (std::size_t k = 1; k + 1 < n; ++k) {
                const cplx gx = (grid[at(i + 1, j, k)] - grid[at(i - 1, j, k)]) * inv;
                const cplx gy = (grid[at(i, j + 1, k)] - grid[at(i, j - 1, k)]) * inv;
                const cplx gz = (grid[at(i, j, k + 1)] - grid[at(i, j, k - 1)]) * inv;
                sum += std::norm(gx) + std::norm(gy) + std::norm(gz);
            }
        }
    }
    return sum * h * h * h;
}

/// Kinetic-energy estimates on successively halved grids.
/// Requires at least three levels, each half the previous.
template <class F>
EnergyDemoResult energy_divergence_demo(F&& f, const std::vector<double>& grid_levels,
                                        const EnergyGridOptions& opts = {}) {
    if (grid_levels.size() < 3) {
        throw std::invalid_argument("energy_divergence_demo: need at least 3 grid levels");
    }
    for (std::size_t k = 0; k < grid_levels.size(); ++k) {
        if (!(grid_levels[k] > 0.0)) throw std::invalid_argument("energy_divergence_demo: spacing must be positive");
        if (k > 0 && std::abs(grid_levels[k] - 0.5 * grid_levels[k - 1]) > 1e-12 * grid_levels[k - 1]) {
            throw std::invalid_argument("energy_divergence_demo: each level must halve the previous spacing");
        }
    }
    EnergyDemoResult res;
    res.growth_threshold = opts.growth_threshold;
    res.convergence_tol = opts.convergence_tol;
    for (const double h : grid_levels) {
        res.levels.push_back({h, grid_kinetic_energy(f, h, opts.box_half_width)});
    }
    res.monotone = true;
    res.divergent = true;
    for (std::size_t k = 1; k < res.levels.size(); ++k) {
        const double ratio = res.levels[k].kinetic_energy / res.levels[k - 1].kinetic_energy;
        res.ratios.push_back(ratio);
        res.monotone &= ratio > 1.0;
        res.divergent &= ratio >= opts.growth_threshold;
    }
    res.converged = res.last_relative_change() < opts.convergence_tol;
    return res;
}

} // namespace pairspace
