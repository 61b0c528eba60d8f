// Copyright 2026 The pairspace Authors
// SPDX-License-Identifier: Apache-2.0

// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include "pairspace/pairspace.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

namespace ps = pairspace;
using ps::cplx;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
    bool passed;
    std::string detail;
};

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char* f, double a) {
    char buf[128];
    std::snprintf(buf, sizeof buf, f, a);
    return buf;
}

// Unit-norm random expansion, standard normal real and imaginary parts.
ps::WaveExpansion random_unit(const ps::BasisSpec& spec, std::mt19937_64& gen) {
    std::normal_distribution<double> nd(0.0, 1.0);
    ps::WaveExpansion w(spec);
    for (Eigen::Index p = 0; p < w.coeffs().size(); ++p) w.coeffs()(p) = {nd(gen), nd(gen)};
    w.coeffs() /= w.norm();
    return w;
}

ps::WaveExpansion embed(const ps::WaveExpansion& src, const ps::BasisSpec& spec) {
    ps::WaveExpansion w(spec);
    for (std::size_t p = 0; p < src.spec().size(); ++p) {
        w.set(src.spec().angular_at(p), src.spec().radial_at(p), src.coeffs()(static_cast<Eigen::Index>(p)));
    }
    return w;
}

Outcome equator_law() {
    const auto t0 = Clock::now();
    const int samples = 32;
    bool ok = true;
    double worst_zero = 0.0;
    double weakest_nonzero = 1e300;
    for (int l = 0; l <= 20; ++l) {
        for (int m = -l; m <= l; ++m) {
            double peak = 0.0;
            for (int j = 0; j < samples; ++j) {
                const double phi = 2.0 * std::numbers::pi * j / samples;
                peak = std::max(peak, std::abs(ps::eval_ylm({l, m}, std::numbers::pi / 2, phi)));
            }
            if ((l - m) % 2 != 0) {
                worst_zero = std::max(worst_zero, peak);
                ok &= peak < 1e-12;
            } else {
                weakest_nonzero = std::min(weakest_nonzero, peak);
                ok &= peak > 1e-3;
            }
        }
    }
    const double dt = seconds_since(t0);
    ok &= dt < 1.0;
    return {ok, "max |Y| for odd l-m " + fmt("%.3g", worst_zero) + ", min peak for even l-m " +
                    fmt("%.3g", weakest_nonzero) + ", " + fmt("%.3f s", dt)};
}

// Positions (l, m, n) with l and m not both odd, enumerated independently of the library rule.
std::vector<std::size_t> combinatorial_allowed(const ps::BasisSpec& spec) {
    std::vector<std::size_t> out;
    for (std::size_t p = 0; p < spec.size(); ++p) {
        const ps::AngularIndex idx = spec.angular_at(p);
        const bool odd_odd = (idx.l & 1) != 0 && (idx.m & 1) != 0;
        if (!odd_odd) out.push_back(p);
    }
    return out;
}

Outcome seam_null_space() {
    const auto t0 = Clock::now();
    const ps::BasisSpec spec = ps::BasisSpec::full(5, ps::RadialBasis::oscillator(1));
    const int n_phi = 2 * (2 * 5 + 1);
    const int n_r = 3;
    const ps::ConstraintSystem sys = ps::build_constraints(spec, n_phi, n_r, 1e-10);
    const ps::ConstraintSystem twice = ps::build_constraints(spec, 2 * n_phi, 2 * n_r, 1e-10);
    const auto allowed = combinatorial_allowed(spec);
    const Eigen::MatrixXcd rule = ps::coordinate_basis(spec.size(), allowed);
    const double angle = ps::max_principal_angle(sys.null_basis, rule);
    const double angle2 = ps::max_principal_angle(twice.null_basis, rule);
    const double dt = seconds_since(t0);
    const bool ok = spec.size() == 36 && sys.nullspace_dim == 24 && allowed.size() == 24 && angle < 1e-8 &&
                    twice.nullspace_dim == 24 && angle2 < 1e-8 && dt < 5.0;
    return {ok, "dim " + std::to_string(sys.nullspace_dim) + " of " + std::to_string(spec.size()) +
                    " (doubled sampling " + std::to_string(twice.nullspace_dim) + "), angle " +
                    fmt("%.3g", std::max(angle, angle2)) + ", " + fmt("%.3f s", dt)};
}

Outcome odd_sector_defect() {
    const ps::BasisSpec spec = ps::BasisSpec::odd_l(5, ps::RadialBasis::oscillator(3));
    const ps::ConstraintSystem sys = ps::build_constraints(spec, 1e-10);
    std::mt19937_64 gen(ps::kDefaultSeed);
    std::normal_distribution<double> nd(0.0, 1.0);
    const int samples = 64;
    const std::vector<double> radii{0.25, 0.75, 1.5, 2.5, 4.0};
    double worst = 0.0;
    for (int draw = 0; draw < 100; ++draw) {
        Eigen::VectorXcd x(sys.null_basis.cols());
        for (Eigen::Index k = 0; k < x.size(); ++k) x(k) = {nd(gen), nd(gen)};
        ps::WaveExpansion w(spec);
        w.coeffs() = sys.null_basis * x;
        w.coeffs() /= w.norm();
        for (const double r : radii) {
            for (int j = 0; j < samples; ++j) {
                const double phi = 2.0 * std::numbers::pi * j / samples;
                worst = std::max(worst, std::abs(ps::evaluate(w, r, std::numbers::pi / 2, phi)));
            }
        }
    }
    const bool ok = sys.nullspace_dim > 0 && worst < 1e-10;
    return {ok, "subspace dim " + std::to_string(sys.nullspace_dim) + ", max equator magnitude " + fmt("%.3g", worst)};
}

Outcome p_wave_counterexample() {
    const ps::BasisSpec spec = ps::BasisSpec::full(5, ps::p_wave_gaussian_basis(3));
    const ps::ProjectionResult proj =
        ps::project([](double r, double t, double p) { return ps::p_wave_gaussian(r, t, p); }, spec);
    double largest = 0.0;
    double other = 0.0;
    for (std::size_t p = 0; p < spec.size(); ++p) {
        const double a = std::abs(proj.expansion.coeffs()(static_cast<Eigen::Index>(p)));
        largest = std::max(largest, a);
        if (!(spec.angular_at(p) == ps::AngularIndex{1, 1})) other = std::max(other, a);
    }
    const double rel_other = other / largest;
    const bool odd = ps::conventional_exchange_parity(proj.expansion, 1e-10) == ps::ExchangeParity::odd;
    // peak of |(x + i y) exp(-r^2)| = r exp(-r^2) at r = 1/sqrt(2)
    const double peak = 1.0 / std::sqrt(2.0 * std::numbers::e);
    const double residual = ps::seam_residual(proj.expansion, 32);
    const bool ok = rel_other < 1e-10 && odd && residual > 0.5 * peak;
    return {ok, "other channels " + fmt("%.3g", rel_other) + " relative, parity " +
                    ps::to_string(ps::conventional_exchange_parity(proj.expansion, 1e-10)) + ", seam residual " +
                    fmt("%.4f", residual) + " vs peak " + fmt("%.4f", peak)};
}

Outcome rotation_closure() {
    const int trials = 100;
    const auto rotations = ps::random_rotations(trials, ps::kDefaultSeed);
    bool ok = true;
    double even_worst = 0.0;
    double mixed_least = 1e300;
    int mixed_count = 0;
    for (const int max_l : {2, 3, 4, 5}) {
        for (const auto& [label, angular] : ps::mixed_candidates(max_l)) {
            const ps::ClosureReport rep = ps::closure_report(label, angular, rotations);
            if (label == "even-l") {
                even_worst = std::max(even_worst, rep.max_defect);
                ok &= rep.max_defect < 1e-10;
            } else {
                ++mixed_count;
                mixed_least = std::min(mixed_least, rep.max_defect);
                ok &= rep.max_defect > 1e-3;
            }
        }
    }
    ok &= mixed_count > 0;
    return {ok, "even-l max defect " + fmt("%.3g", even_worst) + "; " + std::to_string(mixed_count) +
                    " mixed candidates, least max defect " + fmt("%.3g", mixed_least)};
}

Outcome phase_dichotomy() {
    const ps::RadialBasis radial = ps::RadialBasis::oscillator(3);
    const ps::BasisSpec even = ps::BasisSpec::even_l(4, radial);
    const ps::BasisSpec odd = ps::BasisSpec::odd_l(5, radial);
    const ps::BasisSpec full = ps::BasisSpec::full(5, radial);
    const auto dirs = ps::seam_directions(8);
    std::mt19937_64 gen(ps::kDefaultSeed);
    bool ok = true;
    double even_dev = 0.0;
    double odd_dev = 0.0;
    double mixed_least = 1e300;
    for (int draw = 0; draw < 20; ++draw) {
        const ps::WaveExpansion we = random_unit(even, gen);
        const ps::WaveExpansion wo = random_unit(odd, gen);
        const ps::PhaseRecord pe = ps::phase_consistency(we, dirs);
        const ps::PhaseRecord po = ps::phase_consistency(wo, dirs);
        ps::WaveExpansion mixed = embed(we, full);
        mixed.coeffs() = (mixed.coeffs() + embed(wo, full).coeffs()) / std::sqrt(2.0);
        const ps::PhaseRecord pm = ps::phase_consistency(mixed, dirs);
        ok &= pe.consistent && po.consistent;
        even_dev = std::max(even_dev, pe.consistent ? std::abs(pe.delta) : 1e300);
        odd_dev = std::max(odd_dev, po.consistent ? std::abs(po.delta - std::numbers::pi) : 1e300);
        mixed_least = std::min(mixed_least, pm.inconsistency);
    }
    ok &= even_dev <= 1e-6 && odd_dev <= 1e-6 && mixed_least > 0.1;
    return {ok, "max |delta| even " + fmt("%.3g", even_dev) + ", max |delta - pi| odd " + fmt("%.3g", odd_dev) +
                    ", min mixed inconsistency " + fmt("%.3g", mixed_least)};
}

Outcome equivalence() {
    const ps::BasisSpec spec = ps::BasisSpec::even_l(4, ps::RadialBasis::oscillator(3));
    const std::vector<ps::Observable> observables{ps::Observable::identity(), ps::Observable::r_squared(),
                                                  ps::Observable::gaussian_well()};
    const ps::EquivalenceQuadrature quad{ps::AngularOrders{24, 48}};
    std::mt19937_64 gen(ps::kDefaultSeed);
    std::vector<ps::WaveExpansion> states;
    for (int i = 0; i < 20; ++i) states.push_back(random_unit(spec, gen));
    double worst = 0.0;
    for (std::size_t i = 0; i < states.size(); ++i) {
        for (const auto& obs : observables) {
            const auto rec = ps::matrix_element_compare(states[i], states[(i + 1) % states.size()], obs, true, quad);
            worst = std::max(worst, rec.abs_diff);
        }
    }
    const auto raw = ps::matrix_element_compare(states[0], states[0], ps::Observable::identity(), false, quad);
    const double ratio = raw.full_value.real() / raw.half_value.real();
    const bool ok = worst < 1e-8 && std::abs(ratio - 2.0) <= 1e-6;
    return {ok, "max abs diff " + fmt("%.3g", worst) + ", no-renorm identity ratio " + fmt("%.9f", ratio)};
}

Outcome energy_divergence() {
    const auto t0 = Clock::now();
    const std::vector<double> levels{0.25, 0.125, 0.0625};
    const ps::EnergyGridOptions opts{4.0, 1.8, 0.05};
    const ps::EnergyDemoResult disc = ps::energy_divergence_demo(
        [](const ps::HalfSpaceVector& v) { return ps::p_wave_gaussian(v.vec()); }, levels, opts);
    ps::WaveExpansion g0(ps::BasisSpec({{0, 0}}, ps::RadialBasis::oscillator(1)));
    g0.set({0, 0}, 0, 1.0);
    const ps::EnergyDemoResult control = ps::energy_divergence_demo(
        [&](const ps::HalfSpaceVector& v) { return ps::evaluate(g0, v.vec()); }, levels, opts);
    const double dt = seconds_since(t0);
    bool growth = true;
    std::string ratios;
    for (const double r : disc.ratios) {
        growth &= r >= 1.8;
        ratios += (ratios.empty() ? "" : ", ") + fmt("%.4f", r);
    }
    const bool ok = growth && control.last_relative_change() < 0.05 && dt < 30.0;
    return {ok, "growth ratios " + ratios + " (need >= 1.8), control change " +
                    fmt("%.4f", control.last_relative_change()) + ", " + fmt("%.2f s", dt)};
}

Outcome geometry_round_trips() {
    std::mt19937_64 gen(ps::kDefaultSeed);
    std::uniform_real_distribution<double> u(-10.0, 10.0);
    const int count = 100000;
    int exchange_fail = 0;
    int round_trip_fail = 0;
    int partition_fail = 0;
    const auto close = [](const ps::Vec3& a, const ps::Vec3& b) {
        const double scale = std::max({1.0, std::abs(b.x), std::abs(b.y), std::abs(b.z)});
        return std::abs(a.x - b.x) <= 1e-13 * scale && std::abs(a.y - b.y) <= 1e-13 * scale &&
               std::abs(a.z - b.z) <= 1e-13 * scale;
    };
    for (int i = 0; i < count; ++i) {
        const ps::OrderedPair p{{u(gen), u(gen), u(gen)}, {u(gen), u(gen), u(gen)}};
        const ps::PairCoords c = ps::canonicalize(p);
        if (!(c == ps::canonicalize(p.swapped()))) ++exchange_fail;
        const ps::OrderedPair back = ps::invert(c);
        const bool same = (close(back.r1, p.r1) && close(back.r2, p.r2)) ||
                          (close(back.r1, p.r2) && close(back.r2, p.r1));
        if (!same) ++round_trip_fail;
    }
    for (int i = 0; i < count; ++i) {
        const ps::Vec3 v{u(gen), u(gen), u(gen)};
        if (v.x == 0.0 && v.y == 0.0 && v.z == 0.0) continue;
        if (ps::in_domain(v) == ps::in_domain(-v)) ++partition_fail;
    }
    const bool ok = exchange_fail == 0 && round_trip_fail == 0 && partition_fail == 0;
    return {ok, std::to_string(count) + " pairs: " + std::to_string(exchange_fail) + " exchange, " +
                    std::to_string(round_trip_fail) + " round-trip failures; " + std::to_string(count) +
                    " vectors: " + std::to_string(partition_fail) + " partition failures"};
}

} // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"equator_zero_law", equator_law},
        {"seam_null_space", seam_null_space},
        {"odd_sector_defect", odd_sector_defect},
        {"p_wave_counterexample", p_wave_counterexample},
        {"rotation_closure", rotation_closure},
        {"phase_dichotomy", phase_dichotomy},
        {"halfspace_fullspace_equivalence", equivalence},
        {"energy_divergence", energy_divergence},
        {"geometry_round_trips", geometry_round_trips},
    };
    int failed = 0;
    int k = 0;
    for (const auto& [name, run] : criteria) {
        ++k;
        Outcome o{false, ""};
        try {
            o = run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        if (!o.passed) ++failed;
        std::printf("%s %d %s: %s\n", o.passed ? "PASS" : "FAIL", k, name.c_str(), o.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
