// Copyright 2026 The pairspace Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file io.hpp
 * @brief JSON and CSV serialization of expansions and analysis records.
 *
 * Coefficient files are arrays of {"l", "m", "n", "re", "im"} records.
 * Objects are emitted with sorted keys, so identical inputs give identical bytes.
 */

#pragma once

#include "pairspace/continuity.hpp"
#include "pairspace/equivalence.hpp"
#include "pairspace/expansion.hpp"
#include "pairspace/rotation.hpp"

#include <cstdio>
#include <ostream>
#include <set>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include <json.hpp>

namespace pairspace {

using json = nlohmann::json;

inline json to_json(const AngularIndex& idx) { return json::array({idx.l, idx.m}); }

inline json to_json(const std::vector<AngularIndex>& v) {
    json a = json::array();
    for (const auto& i : v) a.push_back(to_json(i));
    return a;
}

inline json to_json(cplx z) { return json{{"re", z.real()}, {"im", z.imag()}}; }

inline json to_json(const RadialBasis& b) {
    return json{{"n_max", b.n_max}, {"scale", b.scale}, {"lambda", b.lambda}};
}

inline json to_json(const BasisSpec& s) {
    return json{{"angular", to_json(s.angular())}, {"radial", to_json(s.radial())}};
}

/// Coefficients as [{l, m, n, re, im}, ...] in basis order.
inline json coefficients_to_json(const WaveExpansion& w) {
    json a = json::array();
    for (std::size_t p = 0; p < w.spec().size(); ++p) {
        const AngularIndex idx = w.spec().angular_at(p);
        const cplx c = w.coeffs()(static_cast<Eigen::Index>(p));
        a.push_back({{"l", idx.l}, {"m", idx.m}, {"n", w.spec().radial_at(p)}, {"re", c.real()}, {"im", c.imag()}});
    }
    return a;
}

/// Reads coefficient records into an expansion over `spec`. Records absent from
/// the input stay zero. Throws std::invalid_argument on malformed records,
/// duplicate keys or keys outside the basis.
inline WaveExpansion coefficients_from_json(const json& j, const BasisSpec& spec) {
    if (!j.is_array()) throw std::invalid_argument("coefficients: expected a JSON array");
    WaveExpansion w(spec);
    std::set<std::tuple<int, int, int>> seen;
    for (const auto& rec : j) {
        if (!rec.is_object()) throw std::invalid_argument("coefficients: record is not an object");
        for (const char* key : {"l", "m", "n"}) {
            if (!rec.contains(key) || !rec[key].is_number_integer()) {
                throw std::invalid_argument(std::string("coefficients: missing integer field '") + key + "'");
            }
        }
        for (const char* key : {"re", "im"}) {
            if (!rec.contains(key) || !rec[key].is_number()) {
                throw std::invalid_argument(std::string("coefficients: missing numeric field '") + key + "'");
            }
        }
        const int l = rec["l"].get<int>();
        const int m = rec["m"].get<int>();
        const int n = rec["n"].get<int>();
        if (!seen.insert({l, m, n}).second) {
            throw std::invalid_argument("coefficients: duplicate record for (" + std::to_string(l) + "," +
                                        std::to_string(m) + "," + std::to_string(n) + ")");
        }
        if (!spec.position({l, m}, n)) {
            throw std::invalid_argument("coefficients: (" + std::to_string(l) + "," + std::to_string(m) + "," +
                                        std::to_string(n) + ") is not in the basis");
        }
        w.set({l, m}, n, {rec["re"].get<double>(), rec["im"].get<double>()});
    }
    return w;
}

inline json to_json(const FermionExclusionReport& r) {
    return json{{"spec", to_json(r.spec)},
                {"forced_zero", to_json(r.forced_zero)},
                {"surviving", to_json(r.surviving)},
                {"nullspace_dim", r.nullspace_dim},
                {"total", r.total},
                {"svd_gap", r.svd_gap},
                {"equator_max", r.equator_max},
                {"equator_samples", r.equator_samples}};
}

inline json to_json(const ConstraintSystem& s) {
    return json{{"spec", to_json(s.spec)},
                {"resolution", to_string(s.resolution)},
                {"samples", s.rows.rows()},
                {"total", s.rows.cols()},
                {"rank", s.rank},
                {"nullspace_dim", s.nullspace_dim},
                {"svd_tol", s.svd_tol},
                {"svd_gap", s.svd_gap()},
                {"largest_discarded", s.largest_discarded()},
                {"operator_norm", s.operator_norm()}};
}

inline json to_json(const ClosureReport& r) {
    return json{{"label", r.label},
                {"spec", to_json(r.angular)},
                {"rotations_tested", r.rotations_tested},
                {"max_defect", r.max_defect},
                {"closed", r.closed}};
}

inline json to_json(const PhaseRecord& p) {
    json j{{"indeterminate", p.indeterminate},
           {"consistent", p.consistent},
           {"inconsistency", p.inconsistency},
           {"samples_used", p.samples_used}};
    j["delta"] = p.consistent ? json(p.delta) : json(nullptr);
    return j;
}

inline json to_json(const MatrixElementRecord& r) {
    return json{{"observable", r.observable},
                {"half_value", to_json(r.half_value)},
                {"full_value", to_json(r.full_value)},
                {"abs_diff", r.abs_diff}};
}

inline json to_json(const EnergyDemoResult& r) {
    json levels = json::array();
    for (const auto& l : r.levels) levels.push_back({{"h", l.h}, {"kinetic_energy", l.kinetic_energy}});
    return json{{"levels", levels},
                {"ratios", r.ratios},
                {"growth_threshold", r.growth_threshold},
                {"convergence_tol", r.convergence_tol},
                {"monotone", r.monotone},
                {"divergent", r.divergent},
                {"converged", r.converged},
                {"last_relative_change", r.last_relative_change()}};
}

/// CSV with header "h,kinetic_energy", values in round-trip precision.
inline void write_energy_csv(std::ostream& os, const EnergyDemoResult& r) {
    os << "h,kinetic_energy\n";
    char buf[64];
    for (const auto& l : r.levels) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", l.h, l.kinetic_energy);
        os << buf;
    }
}

} // namespace pairspace
