// Copyright 2026 The pairspace Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file cli.hpp
 * @brief Batch driver behind the pairspace command-line tool.
 *
 * Each command runs one demonstration, collects named checks and writes
 * report_<command>.json into the output directory. Exit status: 0 when every
 * check passes, 1 when a check fails, 2 for usage or configuration errors.
 */

#pragma once

#include "pairspace/configspace.hpp"
#include "pairspace/continuity.hpp"
#include "pairspace/equivalence.hpp"
#include "pairspace/expansion.hpp"
#include "pairspace/harmonics.hpp"
#include "pairspace/io.hpp"
#include "pairspace/rotation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace pairspace::cli {

inline constexpr int kSchemaVersion = 1;

inline constexpr int kExitPass = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitUsage = 2;

inline const std::vector<std::string>& command_names() {
    static const std::vector<std::string> names{"fermion-exclusion", "rotation-closure", "equivalence",
                                                "energy-divergence", "all"};
    return names;
}

/// Bad configuration or arguments; maps to exit status 2.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    int l_max = 5;
    int n_max = 3;
    int quad_theta = 24;
    int quad_phi = 48;
    double svd_tol = 1e-10;
    std::uint64_t seed = kDefaultSeed;
    std::string output_dir = ".";
    int trials = 50;
    int equivalence_pairs = 20;
    std::vector<std::string> observables{"identity", "r2", "gaussian_well"};
    std::vector<double> grid_levels{0.25, 0.125, 0.0625};
    double box_half_width = 4.0;
    bool renormalize = true;
};

/// Throws ConfigError naming the first violated constraint.
inline void validate(const RunConfig& c) {
    auto fail = [](const std::string& msg) { throw ConfigError("config: " + msg); };
    if (c.l_max < 1 || c.l_max > kMaxWignerDegree) fail("l_max must be in [1, 32]");
    if (c.n_max < 1) fail("n_max must be >= 1");
    if (c.quad_theta < c.l_max + 1) fail("quad_theta must be >= l_max + 1");
    if (c.quad_phi < 2 * c.l_max + 1) fail("quad_phi must be >= 2 l_max + 1");
    if (!(c.svd_tol > 0.0) || !(c.svd_tol < 1.0)) fail("svd_tol must be in (0, 1)");
    if (c.trials < 10) fail("trials must be >= 10");
    if (c.equivalence_pairs < 1) fail("equivalence_pairs must be >= 1");
    if (c.observables.empty()) fail("observables must not be empty");
    for (const auto& name : c.observables) {
        if (!Observable::named(name)) fail("unknown observable '" + name + "'");
    }
    if (c.grid_levels.size() < 3) fail("grid_levels needs at least 3 spacings");
    if (!(c.box_half_width > 0.0)) fail("box_half_width must be positive");
    for (std::size_t k = 0; k < c.grid_levels.size(); ++k) {
        const double h = c.grid_levels[k];
        if (!(h > 0.0)) fail("grid_levels must be positive");
        if (k > 0 && std::abs(h - 0.5 * c.grid_levels[k - 1]) > 1e-12 * h) {
            fail("each grid level must halve the previous one");
        }
        const double cells = 2.0 * c.box_half_width / h;
        if (std::abs(cells - std::round(cells)) > 1e-9 * cells) fail("2 box_half_width must be a multiple of every h");
    }
}

/// Config as embedded in reports. output_dir is omitted so that reports written
/// to different directories compare equal.
inline json to_json(const RunConfig& c) {
    return json{{"l_max", c.l_max},
                {"n_max", c.n_max},
                {"quad_theta", c.quad_theta},
                {"quad_phi", c.quad_phi},
                {"svd_tol", c.svd_tol},
                {"seed", c.seed},
                {"trials", c.trials},
                {"equivalence_pairs", c.equivalence_pairs},
                {"observables", c.observables},
                {"grid_levels", c.grid_levels},
                {"box_half_width", c.box_half_width},
                {"renormalize", c.renormalize}};
}

/// Overlays the fields present in `j` onto `base`. Unknown keys and wrongly
/// typed values are errors.
inline RunConfig config_from_json(const json& j, RunConfig base = {}) {
    if (!j.is_object()) throw ConfigError("config: top level must be a JSON object");
    auto want = [&](const std::string& key, bool ok, const char* type) {
        if (!ok) throw ConfigError("config: '" + key + "' must be " + type);
    };
    for (const auto& [key, v] : j.items()) {
        if (key == "l_max" || key == "n_max" || key == "quad_theta" || key == "quad_phi" || key == "trials" ||
            key == "equivalence_pairs") {
            want(key, v.is_number_integer(), "an integer");
            const int x = v.get<int>();
            if (key == "l_max") base.l_max = x;
            if (key == "n_max") base.n_max = x;
            if (key == "quad_theta") base.quad_theta = x;
            if (key == "quad_phi") base.quad_phi = x;
            if (key == "trials") base.trials = x;
            if (key == "equivalence_pairs") base.equivalence_pairs = x;
        } else if (key == "svd_tol") {
            want(key, v.is_number(), "a number");
            base.svd_tol = v.get<double>();
        } else if (key == "box_half_width") {
            want(key, v.is_number(), "a number");
            base.box_half_width = v.get<double>();
        } else if (key == "seed") {
            want(key, v.is_number_unsigned(), "a non-negative integer");
            base.seed = v.get<std::uint64_t>();
        } else if (key == "output_dir") {
            want(key, v.is_string(), "a string");
            base.output_dir = v.get<std::string>();
        } else if (key == "renormalize") {
            want(key, v.is_boolean(), "a boolean");
            base.renormalize = v.get<bool>();
        } else if (key == "observables") {
            want(key, v.is_array() && std::all_of(v.begin(), v.end(), [](const json& e) { return e.is_string(); }),
                 "an array of strings");
            base.observables = v.get<std::vector<std::string>>();
        } else if (key == "grid_levels") {
            want(key, v.is_array() && std::all_of(v.begin(), v.end(), [](const json& e) { return e.is_number(); }),
                 "an array of numbers");
            base.grid_levels = v.get<std::vector<double>>();
        } else {
            throw ConfigError("config: unknown key '" + key + "'");
        }
    }
    return base;
}

inline RunConfig load_config_file(const std::string& path, RunConfig base = {}) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open '" + path + "'");
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError("config: parse error in '" + path + "': " + e.what());
    }
    return config_from_json(j, std::move(base));
}

struct Check {
    std::string name;
    bool passed = false;
    std::string detail;
};

struct CommandResult {
    std::string command;
    json results = json::object();
    std::vector<Check> checks{};

    [[nodiscard]] bool passed() const {
        return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
    }
    [[nodiscard]] int exit_code() const { return passed() ? kExitPass : kExitCheckFailed; }
    void check(std::string name, bool ok, std::string detail) {
        checks.push_back({std::move(name), ok, std::move(detail)});
    }
};

namespace detail {

inline std::string fmt(double v) {
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

/// Standard normal real and imaginary parts, scaled to unit coefficient norm.
inline WaveExpansion random_expansion(const BasisSpec& spec, std::mt19937_64& gen) {
    std::normal_distribution<double> nd(0.0, 1.0);
    WaveExpansion w(spec);
    for (Eigen::Index p = 0; p < w.coeffs().size(); ++p) w.coeffs()(p) = {nd(gen), nd(gen)};
    w.coeffs() /= w.norm();
    return w;
}

/// Embeds a narrower expansion into `spec` (same radial basis).
inline WaveExpansion embed(const WaveExpansion& src, const BasisSpec& spec) {
    WaveExpansion w(spec);
    for (std::size_t p = 0; p < src.spec().size(); ++p) {
        w.set(src.spec().angular_at(p), src.spec().radial_at(p), src.coeffs()(static_cast<Eigen::Index>(p)));
    }
    return w;
}

inline json rule_entry(const std::string& label, const ConstraintSystem& sys, double angle,
                       const ConstraintSystem& doubled) {
    json j = pairspace::to_json(sys);
    j["label"] = label;
    j["rule_nullspace_dim"] = seam_rule_positions(sys.spec).size();
    j["rule_principal_angle"] = angle;
    j["doubled_sampling_nullspace_dim"] = doubled.nullspace_dim;
    return j;
}

} // namespace detail

/// Seam constraints for even-only, odd-only and full specs, the odd-l sector
/// report, and the p-wave Gaussian counterexample.
inline CommandResult run_fermion_exclusion(const RunConfig& cfg) {
    CommandResult res{"fermion-exclusion"};
    const RadialBasis radial = RadialBasis::oscillator(cfg.n_max);
    const int even_top = cfg.l_max % 2 == 0 ? cfg.l_max : cfg.l_max - 1;

    struct Case {
        std::string label;
        BasisSpec spec;
    };
    const std::vector<Case> cases{
        {"even", BasisSpec::even_l(even_top, radial)},
        {"odd", BasisSpec::odd_l(cfg.l_max, radial)},
        {"full", BasisSpec::full(cfg.l_max, radial)},
        {"full_single_radial", BasisSpec::full(cfg.l_max, RadialBasis::oscillator(1))},
    };
    json specs = json::array();
    for (const auto& c : cases) {
        int max_abs_m = 0;
        for (const auto& idx : c.spec.angular()) max_abs_m = std::max(max_abs_m, std::abs(idx.m));
        const int n_phi = 2 * (2 * max_abs_m + 1);
        const int n_r = c.spec.n_max() + 2;
        const ConstraintSystem sys = build_constraints(c.spec, n_phi, n_r, cfg.svd_tol);
        const ConstraintSystem twice = build_constraints(c.spec, 2 * n_phi, 2 * n_r, cfg.svd_tol);
        const double angle = rule_principal_angle(sys);
        const std::size_t rule_dim = seam_rule_positions(c.spec).size();
        specs.push_back(detail::rule_entry(c.label, sys, angle, twice));

        res.check("rule_match/" + c.label,
                  static_cast<std::size_t>(sys.nullspace_dim) == rule_dim && angle < 1e-8,
                  "nullspace_dim " + std::to_string(sys.nullspace_dim) + " vs rule " + std::to_string(rule_dim) +
                      ", principal angle " + detail::fmt(angle));
        res.check("sampling_stable/" + c.label, twice.nullspace_dim == sys.nullspace_dim,
                  "doubled sampling nullspace_dim " + std::to_string(twice.nullspace_dim));
        if (c.label == "even") {
            res.check("even_unconstrained", sys.operator_norm() <= 1e-12,
                      "operator norm " + detail::fmt(sys.operator_norm()));
        }
    }
    res.results["constraint_systems"] = specs;

    const FermionExclusionReport odd = fermion_exclusion_report(cfg.l_max, cfg.n_max, cfg.svd_tol);
    res.results["odd_sector"] = pairspace::to_json(odd);
    std::vector<AngularIndex> want_forced;
    std::vector<AngularIndex> want_surviving;
    for (const auto& idx : odd.spec.angular()) (seam_rule_allows(idx) ? want_surviving : want_forced).push_back(idx);
    res.check("odd_forced_zero", odd.forced_zero == want_forced && odd.surviving == want_surviving,
              std::to_string(odd.forced_zero.size()) + " forced, " + std::to_string(odd.surviving.size()) +
                  " surviving");
    res.check("odd_vanish_on_equator", odd.equator_max < 1e-10, "equator_max " + detail::fmt(odd.equator_max));

    // (x + i y) exp(-r^2): a single-valued function of the unordered pair, yet odd
    const BasisSpec pspec = BasisSpec::full(cfg.l_max, p_wave_gaussian_basis(cfg.n_max));
    const ProjectionResult proj = project([](double r, double t, double p) { return p_wave_gaussian(r, t, p); },
                                          pspec, AngularOrders{cfg.quad_theta, cfg.quad_phi});
    const auto channels = populated_channels(proj.expansion);
    const ExchangeParity parity = conventional_exchange_parity(proj.expansion, 1e-10);
    const double residual = seam_residual(proj.expansion, 32);
    const double peak = 1.0 / std::sqrt(2.0 * std::numbers::e);  // max of r exp(-r^2)
    json pj{{"populated_channels", pairspace::to_json(std::vector<AngularIndex>(channels.begin(), channels.end()))},
            {"exchange_parity", to_string(parity)},
            {"seam_residual", residual},
            {"peak_amplitude", peak},
            {"projection_residual", proj.residual},
            {"coefficients", coefficients_to_json(proj.expansion)}};
    res.results["p_wave_gaussian"] = pj;
    res.check("p_wave_single_channel", channels == std::set<AngularIndex>{{1, 1}},
              std::to_string(channels.size()) + " populated channel(s)");
    res.check("p_wave_odd_parity", parity == ExchangeParity::odd, "parity " + to_string(parity));
    res.check("p_wave_discontinuous", residual > 0.5 * peak,
              "seam residual " + detail::fmt(residual) + " vs peak " + detail::fmt(peak));
    return res;
}

/// Rotation closure of every candidate space plus the seam phase suite.
inline CommandResult run_rotation_closure(const RunConfig& cfg) {
    CommandResult res{"rotation-closure"};
    const std::vector<ClosureReport> reports = mixed_symmetry_exclusion(cfg.l_max, cfg.trials, cfg.seed);
    json cands = json::array();
    for (const auto& r : reports) {
        cands.push_back(pairspace::to_json(r));
        if (r.label == "even-l") {
            res.check("closed/even-l", r.closed, "max defect " + detail::fmt(r.max_defect));
        } else {
            res.check("flagged/" + r.label, !r.closed && r.max_defect > 1e-3,
                      "max defect " + detail::fmt(r.max_defect));
            res.check("seam_admissible/" + r.label, seam_admissible(r.angular), "no (odd l, odd m) index");
        }
    }
    res.results["candidates"] = cands;

    const EulerAngles quarter_y{0.0, std::numbers::pi / 2, 0.0};
    const double y10 = closure_defect(std::vector<AngularIndex>{{1, 0}}, quarter_y);
    res.results["y10_quarter_turn_defect"] = y10;
    res.check("flagged/(1,0)", y10 > 0.1, "defect under pi/2 about y " + detail::fmt(y10));

    // phase suite
    const RadialBasis radial = RadialBasis::oscillator(cfg.n_max);
    const int even_top = cfg.l_max % 2 == 0 ? cfg.l_max : cfg.l_max - 1;
    const BasisSpec even = BasisSpec::even_l(even_top, radial);
    const BasisSpec odd = BasisSpec::odd_l(cfg.l_max, radial);
    const BasisSpec full = BasisSpec::full(cfg.l_max, radial);
    const std::vector<HalfSpaceVector> dirs = seam_directions(8);
    std::mt19937_64 gen(cfg.seed);
    const int draws = 5;

    json phase = json::object();
    double worst_even = 0.0;
    double worst_odd = 0.0;
    double least_mixed = 1e300;
    bool even_ok = true;
    bool odd_ok = true;
    json even_rows = json::array();
    json odd_rows = json::array();
    json mixed_rows = json::array();
    for (int d = 0; d < draws; ++d) {
        const WaveExpansion we = detail::random_expansion(even, gen);
        const WaveExpansion wo = detail::random_expansion(odd, gen);
        const PhaseRecord pe = phase_consistency(we, dirs);
        const PhaseRecord po = phase_consistency(wo, dirs);
        WaveExpansion mixed = detail::embed(we, full);
        mixed.coeffs() = (mixed.coeffs() + detail::embed(wo, full).coeffs()) / std::sqrt(2.0);
        const PhaseRecord pm = phase_consistency(mixed, dirs);
        even_rows.push_back(pairspace::to_json(pe));
        odd_rows.push_back(pairspace::to_json(po));
        mixed_rows.push_back(pairspace::to_json(pm));
        even_ok &= pe.consistent && std::abs(pe.delta) <= 1e-6;
        odd_ok &= po.consistent && std::abs(po.delta - std::numbers::pi) <= 1e-6;
        worst_even = std::max(worst_even, pe.consistent ? std::abs(pe.delta) : 1e300);
        worst_odd = std::max(worst_odd, po.consistent ? std::abs(po.delta - std::numbers::pi) : 1e300);
        least_mixed = std::min(least_mixed, pm.inconsistency);
    }
    phase["even"] = even_rows;
    phase["odd"] = odd_rows;
    phase["mixed"] = mixed_rows;

    // (0,0) + (1,0) is seam continuous, so the phase test cannot see it;
    // the closure test above is what rejects it.
    WaveExpansion s_p0(full);
    s_p0.set({0, 0}, 0, 1.0 / std::sqrt(2.0));
    s_p0.set({1, 0}, 0, 1.0 / std::sqrt(2.0));
    phase["s_plus_p0"] = pairspace::to_json(phase_consistency(s_p0, dirs));
    res.results["phase"] = phase;

    res.check("phase/even_delta_0", even_ok, "max |delta| " + detail::fmt(worst_even));
    res.check("phase/odd_delta_pi", odd_ok, "max |delta - pi| " + detail::fmt(worst_odd));
    res.check("phase/mixed_inconsistent", least_mixed > 0.1, "min inconsistency " + detail::fmt(least_mixed));
    return res;
}

/// Half-space versus full-space matrix elements on random even-l expansions.
inline CommandResult run_equivalence(const RunConfig& cfg) {
    CommandResult res{"equivalence"};
    const int even_top = cfg.l_max % 2 == 0 ? cfg.l_max : cfg.l_max - 1;
    const BasisSpec spec = BasisSpec::even_l(even_top, RadialBasis::oscillator(cfg.n_max));
    const EquivalenceQuadrature quad{AngularOrders{cfg.quad_theta, cfg.quad_phi}};

    std::vector<Observable> observables;
    for (const auto& name : cfg.observables) observables.push_back(*Observable::named(name));

    std::mt19937_64 gen(cfg.seed);
    std::vector<WaveExpansion> states;
    for (int i = 0; i < cfg.equivalence_pairs; ++i) {
        WaveExpansion w = detail::random_expansion(spec, gen);
        w.coeffs() *= std::sqrt(2.0);  // unit norm on the half space
        states.push_back(std::move(w));
    }

    json rows = json::array();
    double worst = 0.0;
    for (int i = 0; i < cfg.equivalence_pairs; ++i) {
        const WaveExpansion& a = states[static_cast<std::size_t>(i)];
        const WaveExpansion& b = states[static_cast<std::size_t>((i + 1) % cfg.equivalence_pairs)];
        for (const auto& obs : observables) {
            const MatrixElementRecord rec = matrix_element_compare(a, b, obs, cfg.renormalize, quad);
            json row = pairspace::to_json(rec);
            row["pair"] = i;
            rows.push_back(row);
            worst = std::max(worst, rec.abs_diff);
        }
    }
    res.results["rows"] = rows;
    res.results["max_abs_diff"] = worst;
    res.check("matrix_elements_agree", worst < 1e-8, "max abs diff " + detail::fmt(worst));

    // normalization: both norms 1 with the 1/sqrt(2), full = 2 x half without it
    const WaveExpansion& w0 = states.front();
    const double half = halfspace_norm_squared(w0, quad);
    const double full = fullspace_norm_squared(extend_to_fullspace(w0, true), quad);
    const MatrixElementRecord raw = matrix_element_compare(w0, w0, Observable::identity(), false, quad);
    const double ratio = raw.full_value.real() / raw.half_value.real();
    res.results["halfspace_norm_squared"] = half;
    res.results["fullspace_norm_squared"] = full;
    res.results["no_renorm_identity_ratio"] = ratio;
    res.check("norm_preserved", std::abs(full - half) < 1e-8 && std::abs(half - 1.0) < 1e-8,
              "half " + detail::fmt(half) + ", full " + detail::fmt(full));
    res.check("no_renorm_ratio_2", std::abs(ratio - 2.0) <= 1e-6, "ratio " + detail::fmt(ratio));

    // analytic <r^2> = 3/2 for the unit-scale oscillator ground state
    WaveExpansion s0(spec);
    s0.set({0, 0}, 0, std::sqrt(2.0));
    const MatrixElementRecord r2 = matrix_element_compare(s0, s0, Observable::r_squared(), cfg.renormalize, quad);
    res.results["ground_state_r2"] = pairspace::to_json(r2);
    res.check("ground_state_r2", std::abs(r2.half_value.real() - 1.5) < 1e-8 && r2.abs_diff < 1e-8,
              "half " + detail::fmt(r2.half_value.real()) + ", full " + detail::fmt(r2.full_value.real()));

    bool rejected = false;
    try {
        Observable odd("z", [](const Vec3& v) { return v.z; });
    } catch (const std::invalid_argument&) {
        rejected = true;
    }
    res.check("odd_observable_rejected", rejected, "kernel z fails the parity guard");
    return res;
}

struct EnergyOutputs {
    EnergyDemoResult discontinuous;
    EnergyDemoResult control;
};

/// Grid kinetic energy of (x + i y) exp(-r^2) read on D, and of the smooth
/// ground state g_0 Y_00 as control.
inline EnergyOutputs energy_runs(const RunConfig& cfg) {
    const EnergyGridOptions opts{cfg.box_half_width, 1.8, 0.05};
    EnergyOutputs out;
    out.discontinuous =
        energy_divergence_demo([](const HalfSpaceVector& v) { return p_wave_gaussian(v.vec()); }, cfg.grid_levels, opts);
    WaveExpansion g0(BasisSpec({{0, 0}}, RadialBasis::oscillator(1)));
    g0.set({0, 0}, 0, 1.0);
    out.control = energy_divergence_demo([&](const HalfSpaceVector& v) { return evaluate(g0, v.vec()); },
                                         cfg.grid_levels, opts);
    return out;
}

inline CommandResult run_energy_divergence(const RunConfig& cfg, EnergyOutputs* keep = nullptr) {
    CommandResult res{"energy-divergence"};
    EnergyOutputs e = energy_runs(cfg);
    res.results["p_wave_gaussian"] = pairspace::to_json(e.discontinuous);
    res.results["control"] = pairspace::to_json(e.control);
    std::string ratios;
    for (const double r : e.discontinuous.ratios) ratios += (ratios.empty() ? "" : ", ") + detail::fmt(r);
    res.check("discontinuous_monotone", e.discontinuous.monotone, "ratios " + ratios);
    res.check("discontinuous_growth", e.discontinuous.divergent,
              "ratios " + ratios + " vs threshold " + detail::fmt(e.discontinuous.growth_threshold));
    res.check("control_converged", e.control.converged,
              "last relative change " + detail::fmt(e.control.last_relative_change()));
    if (keep) *keep = std::move(e);
    return res;
}

inline json report_json(const CommandResult& r, const RunConfig& cfg) {
    json checks = json::array();
    for (const auto& c : r.checks) checks.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
    return json{{"schema_version", kSchemaVersion},
                {"command", r.command},
                {"config", to_json(cfg)},
                {"passed", r.passed()},
                {"checks", checks},
                {"results", r.results}};
}

namespace detail {

inline void write_text(const std::filesystem::path& p, const std::string& text) {
    std::ofstream out(p, std::ios::binary);
    if (!out) throw ConfigError("cannot write '" + p.string() + "'");
    out << text;
}

inline void print_summary(std::ostream& log, const CommandResult& r) {
    log << "== " << r.command << " ==\n";
    for (const auto& c : r.checks) {
        log << (c.passed ? "  [PASS] " : "  [FAIL] ") << c.name << ": " << c.detail << "\n";
    }
}

} // namespace detail

/// Runs `command`, writes its reports under cfg.output_dir and prints a
/// summary to `log`. Returns the exit status. Throws ConfigError,
/// std::invalid_argument or std::domain_error for usage problems.
inline int execute(const std::string& command, const RunConfig& cfg, std::ostream& log) {
    validate(cfg);
    const std::filesystem::path dir(cfg.output_dir);
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw ConfigError("cannot create output directory '" + cfg.output_dir + "': " + ec.message());

    std::vector<CommandResult> results;
    auto emit = [&](CommandResult r) {
        detail::print_summary(log, r);
        detail::write_text(dir / ("report_" + r.command + ".json"), report_json(r, cfg).dump(2) + "\n");
        results.push_back(std::move(r));
    };
    const bool all = command == "all";
    if (all || command == "fermion-exclusion") emit(run_fermion_exclusion(cfg));
    if (all || command == "rotation-closure") emit(run_rotation_closure(cfg));
    if (all || command == "equivalence") emit(run_equivalence(cfg));
    if (all || command == "energy-divergence") {
        EnergyOutputs e;
        CommandResult r = run_energy_divergence(cfg, &e);
        std::ostringstream a;
        std::ostringstream b;
        write_energy_csv(a, e.discontinuous);
        write_energy_csv(b, e.control);
        detail::write_text(dir / "energy.csv", a.str());
        detail::write_text(dir / "energy_control.csv", b.str());
        emit(std::move(r));
    }
    if (results.empty()) throw ConfigError("unknown command '" + command + "'");

    int code = kExitPass;
    for (const auto& r : results) code = std::max(code, r.exit_code());
    if (all) {
        json summary = json::object();
        for (const auto& r : results) summary[r.command] = report_json(r, cfg)["passed"];
        detail::write_text(dir / "report_all.json",
                           json{{"schema_version", kSchemaVersion},
                                {"command", "all"},
                                {"config", to_json(cfg)},
                                {"passed", code == kExitPass},
                                {"commands", summary}}
                                   .dump(2) +
                               "\n");
    }
    log << (code == kExitPass ? "all checks passed\n" : "some checks FAILED\n");
    return code;
}

} // namespace pairspace::cli
