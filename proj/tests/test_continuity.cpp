// Copyright 2026 The pairspace Authors
// SPDX-License-Identifier: Apache-2.0

#include "pairspace/continuity.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <set>

namespace ps = pairspace;
using ps::cplx;
using std::numbers::pi;

namespace {

ps::RadialBasis osc(int n) { return ps::RadialBasis::oscillator(n); }

// Continuity-allowed positions written out directly: not (l odd and m odd).
std::vector<std::size_t> rule_oracle(const ps::BasisSpec& spec) {
    std::vector<std::size_t> out;
    for (std::size_t p = 0; p < spec.size(); ++p) {
        const auto idx = spec.angular_at(p);
        if (!(std::abs(idx.l) % 2 == 1 && std::abs(idx.m) % 2 == 1)) out.push_back(p);
    }
    return out;
}

ps::WaveExpansion single(const ps::BasisSpec& spec, ps::AngularIndex idx, int n = 0) {
    ps::WaveExpansion w(spec);
    w.set(idx, n, 1.0);
    return w;
}

ps::EnergyDemoResult energy_of(const ps::WaveExpansion& w) {
    return ps::energy_divergence_demo([&](const ps::HalfSpaceVector& v) { return ps::evaluate(w, v.vec()); },
                                      {0.25, 0.125, 0.0625});
}

} // namespace

TEST(SeamResidual, PWaveMatchesDirectTwoPointEvaluation) {
    const ps::BasisSpec spec = ps::BasisSpec::full(3, ps::p_wave_gaussian_basis(3));
    const auto proj = ps::project([](double r, double t, double p) { return ps::p_wave_gaussian(r, t, p); }, spec);
    const int samples = 32;
    double want = 0.0;
    for (const double r : ps::seam_sample_radii(spec.radial(), samples)) {
        for (int j = 0; j < samples; ++j) {
            const double phi = 2 * pi * j / samples;
            const ps::Vec3 a{r * std::cos(phi), r * std::sin(phi), 0.0};
            want = std::max(want, std::abs(ps::p_wave_gaussian(-a) - ps::p_wave_gaussian(a)));
        }
    }
    EXPECT_GT(want, 0.5);
    EXPECT_NEAR(ps::seam_residual(proj.expansion, samples), want, 1e-10);
    EXPECT_FALSE(ps::seam_continuous(proj.expansion));
}

TEST(SeamResidual, ContinuousExamples) {
    const ps::BasisSpec spec = ps::BasisSpec::full(2, osc(2));
    EXPECT_LE(ps::seam_residual(single(spec, {2, 1}), 16), 1e-10);
    EXPECT_EQ(ps::seam_residual(single(spec, {0, 0}), 16), 0.0);
    EXPECT_THROW(ps::seam_residual(single(spec, {0, 0}), 7), std::invalid_argument);
}

TEST(BuildConstraints, FullSpecUpToFive) {
    const ps::BasisSpec spec = ps::BasisSpec::full(5, osc(1));
    const auto sys = ps::build_constraints(spec, 22, 3);
    EXPECT_EQ(sys.nullspace_dim, 24);
    EXPECT_EQ(sys.rank + sys.nullspace_dim, 36);
    EXPECT_EQ(sys.allowed, rule_oracle(spec));
    EXPECT_EQ(sys.forced.size(), 12u);
    EXPECT_TRUE(sys.coupled.empty());
    EXPECT_LT(ps::max_principal_angle(sys.null_basis, ps::coordinate_basis(spec.size(), rule_oracle(spec))), 1e-8);
}

TEST(BuildConstraints, EvenOnlyIsUnconstrained) {
    const ps::BasisSpec spec = ps::BasisSpec::even_l(4, osc(3));
    const auto sys = ps::build_constraints(spec, 18, 5);
    EXPECT_EQ(sys.rows.cwiseAbs().maxCoeff(), 0.0);
    EXPECT_LE(sys.operator_norm(), 1e-12);
    EXPECT_EQ(sys.nullspace_dim, static_cast<int>(spec.size()));
}

TEST(BuildConstraints, SingleOddOddChannel) {
    const ps::BasisSpec spec({{1, 1}}, osc(1));
    EXPECT_EQ(ps::build_constraints(spec, 3, 1).nullspace_dim, 0);
}

TEST(BuildConstraints, RefusesUnderSampling) {
    const ps::BasisSpec spec = ps::BasisSpec::full(3, osc(2));
    EXPECT_THROW(ps::build_constraints(spec, 6, 2), std::invalid_argument);
    EXPECT_THROW(ps::build_constraints(spec, 7, 1), std::invalid_argument);
    EXPECT_THROW(ps::build_constraints(spec, 7, 2, 0.0), std::invalid_argument);
    EXPECT_NO_THROW(ps::build_constraints(spec, 7, 2));
}

TEST(BuildConstraints, RuleHoldsOnRandomSpecs) {
    std::mt19937_64 gen(21);
    std::bernoulli_distribution keep(0.5);
    for (int trial = 0; trial < 30; ++trial) {
        std::vector<ps::AngularIndex> ang;
        for (int l = 0; l <= 6; ++l) {
            for (int m = -l; m <= l; ++m) {
                if (keep(gen)) ang.push_back({l, m});
            }
        }
        if (ang.empty()) continue;
        const int n_max = 1 + trial % 3;
        const ps::BasisSpec spec(ang, osc(n_max));
        const auto sys = ps::build_constraints(spec);
        const auto rule = rule_oracle(spec);
        ASSERT_EQ(static_cast<std::size_t>(sys.nullspace_dim), rule.size());
        ASSERT_EQ(sys.allowed, rule);
        ASSERT_LT(ps::rule_principal_angle(sys), 1e-8);
        // doubling the sampling changes nothing
        int max_m = 0;
        for (const auto& i : ang) max_m = std::max(max_m, std::abs(i.m));
        ASSERT_EQ(ps::build_constraints(spec, 4 * (2 * max_m + 1), 2 * (n_max + 2)).nullspace_dim, sys.nullspace_dim);
    }
}

TEST(BuildConstraints, AggregateSamplingAdmitsCrossDegreeCancellation) {
    // Summed over l, only one constraint per odd m survives: 36 - 6 = 30.
    const ps::BasisSpec spec = ps::BasisSpec::full(5, osc(1));
    const auto agg = ps::build_constraints(spec, 22, 3, 1e-10, ps::SeamResolution::aggregate);
    EXPECT_EQ(agg.nullspace_dim, 30);
    EXPECT_FALSE(agg.coupled.empty());
}

TEST(ResidualConsistency, NullSpaceMembersAreContinuous) {
    std::mt19937_64 gen(22);
    std::normal_distribution<double> nd;
    const ps::BasisSpec spec = ps::BasisSpec::full(5, osc(2));
    const auto sys = ps::build_constraints(spec);
    for (int i = 0; i < 20; ++i) {
        Eigen::VectorXcd x(sys.nullspace_dim);
        for (Eigen::Index k = 0; k < x.size(); ++k) x(k) = {nd(gen), nd(gen)};
        const ps::WaveExpansion w(spec, sys.null_basis * x);
        EXPECT_TRUE(ps::seam_continuous(w));
    }
    // and anything with an odd-odd component is not
    for (const auto p : sys.forced) {
        ps::WaveExpansion w(spec);
        w.coeffs()(static_cast<Eigen::Index>(p)) = 1.0;
        EXPECT_FALSE(ps::seam_continuous(w));
    }
}

TEST(ResidualConsistency, CancellingPairIsContinuousButOutsideNullSpace) {
    // Y_11 and Y_31 are proportional on the equator, so a suitable combination
    // is continuous there although each term alone is not.
    const ps::BasisSpec spec({{1, 1}, {3, 1}}, osc(1));
    const cplx y11 = ps::eval_ylm({1, 1}, pi / 2, 0.0);
    const cplx y31 = ps::eval_ylm({3, 1}, pi / 2, 0.0);
    ps::WaveExpansion w(spec);
    w.set({1, 1}, 0, y31);
    w.set({3, 1}, 0, -y11);
    EXPECT_TRUE(ps::seam_continuous(w));
    EXPECT_EQ(ps::build_constraints(spec).nullspace_dim, 0);
    EXPECT_EQ(ps::build_constraints(spec, 1e-10, ps::SeamResolution::aggregate).nullspace_dim, 1);
}

TEST(FermionExclusion, DegreeOne) {
    const auto rep = ps::fermion_exclusion_report(1, 1);
    EXPECT_EQ(rep.forced_zero, (std::vector<ps::AngularIndex>{{1, -1}, {1, 1}}));
    EXPECT_EQ(rep.surviving, (std::vector<ps::AngularIndex>{{1, 0}}));
    EXPECT_LT(rep.equator_max, 1e-10);
    EXPECT_EQ(rep.nullspace_dim, 1);
}

TEST(FermionExclusion, DegreeThree) {
    const auto rep = ps::fermion_exclusion_report(3, 2);
    EXPECT_EQ(rep.forced_zero,
              (std::vector<ps::AngularIndex>{{1, -1}, {1, 1}, {3, -3}, {3, -1}, {3, 1}, {3, 3}}));
    EXPECT_EQ(rep.surviving, (std::vector<ps::AngularIndex>{{1, 0}, {3, -2}, {3, 0}, {3, 2}}));
    EXPECT_EQ(rep.nullspace_dim, 8);
    EXPECT_LT(rep.equator_max, 1e-10);
}

TEST(FermionExclusion, DegreeZeroIsEmpty) {
    const auto rep = ps::fermion_exclusion_report(0, 2);
    EXPECT_TRUE(rep.spec.empty());
    EXPECT_TRUE(rep.forced_zero.empty());
    EXPECT_TRUE(rep.surviving.empty());
    EXPECT_EQ(rep.nullspace_dim, 0);
}

TEST(FermionExclusion, SurvivorsVanishOnEquatorPointwise) {
    // independent of the report: random survivors evaluated directly
    std::mt19937_64 gen(23);
    std::normal_distribution<double> nd;
    std::vector<ps::AngularIndex> ang;
    for (int l = 1; l <= 5; l += 2) {
        for (int m = -l; m <= l; m += 2) {
            if (m % 2 == 0) ang.push_back({l, m});
        }
    }
    const ps::BasisSpec spec(ang, osc(2));
    for (int i = 0; i < 10; ++i) {
        ps::WaveExpansion w(spec);
        for (Eigen::Index k = 0; k < w.coeffs().size(); ++k) w.coeffs()(k) = {nd(gen), nd(gen)};
        w.coeffs() /= w.norm();
        for (int j = 0; j < 64; ++j) {
            EXPECT_LT(std::abs(ps::evaluate(w, 1.3, pi / 2, 2 * pi * j / 64)), 1e-12);
        }
    }
}

TEST(EnergyDemo, SmoothFunctionsConverge) {
    // g_0 Y_22 needs the r^2 factor (lambda = 2) to be smooth at the origin
    const std::vector<std::pair<ps::BasisSpec, ps::AngularIndex>> cases{
        {ps::BasisSpec::full(2, osc(1)), {0, 0}},
        {ps::BasisSpec::full(2, ps::RadialBasis::make(1, 1.0, 2)), {2, 2}},
    };
    for (const auto& [spec, idx] : cases) {
        const auto w = single(spec, idx);
        ASSERT_LE(ps::seam_residual(w, 16), 1e-12);
        const auto res = energy_of(w);
        EXPECT_TRUE(res.converged) << ps::to_string(idx);
        EXPECT_LT(res.last_relative_change(), 0.05);
        EXPECT_FALSE(res.divergent);
    }
}

TEST(EnergyDemo, GroundStateEnergyMatchesAnalyticValue) {
    // int |grad psi|^2 = <p^2> = 3/2 for the unit oscillator ground state
    const auto w = single(ps::BasisSpec({{0, 0}}, osc(1)), {0, 0});
    const auto res = energy_of(w);
    EXPECT_NEAR(res.levels.back().kinetic_energy, 1.5, 0.01);
}

TEST(EnergyDemo, JumpGivesInverseSpacingGrowth) {
    const auto res = ps::energy_divergence_demo(
        [](const ps::HalfSpaceVector& v) { return ps::p_wave_gaussian(v.vec()); }, {0.25, 0.125, 0.0625});
    EXPECT_TRUE(res.monotone);
    // E(h) ~ A/h + B: successive increments double as h halves
    const double d1 = res.levels[1].kinetic_energy - res.levels[0].kinetic_energy;
    const double d2 = res.levels[2].kinetic_energy - res.levels[1].kinetic_energy;
    EXPECT_NEAR(d2 / d1, 2.0, 0.25);
}

TEST(EnergyDemo, Preconditions) {
    const auto f = [](const ps::HalfSpaceVector&) { return cplx{1.0}; };
    EXPECT_THROW(ps::energy_divergence_demo(f, {0.25, 0.125}), std::invalid_argument);
    EXPECT_THROW(ps::energy_divergence_demo(f, {0.25, 0.1, 0.05}), std::invalid_argument);
    EXPECT_THROW(ps::energy_divergence_demo(f, {0.3, 0.15, 0.075}), std::invalid_argument);
}
