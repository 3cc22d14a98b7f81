// Copyright 2026 The romit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "oracles.h"
#include "romit/errors.h"
#include "romit/mcm.h"

namespace romit {
namespace {

McmNoise flip_noise(double f) {
    McmNoise noise;
    noise.ancilla_readout = MeasurementModel(bit_flip(f));
    return noise;
}

TEST(ProtectionMode, NamesRoundTrip) {
    for (auto m : {ProtectionMode::kBare, ProtectionMode::kMrc, ProtectionMode::kMrcQprc}) {
        EXPECT_EQ(parse_protection_mode(to_string(m)), m);
    }
    EXPECT_EQ(to_string(ProtectionMode::kMrcQprc), "mrc+qprc");
    EXPECT_THROW(parse_protection_mode("qprc"), ValidationError);
}

TEST(ProtectionCircuit, NoiselessMemorySurvives) {
    for (auto mode : {ProtectionMode::kBare, ProtectionMode::kMrc}) {
        const auto c = build_protection_circuit(4, mode, McmNoise{});
        c.validate();
        EXPECT_EQ(c.num_clbits(), 9u);
        ASSERT_EQ(c.output_slots().size(), 1u);
        EXPECT_EQ(c.output_slots()[0], 8u);
        EXPECT_NEAR(output_distribution(c).weight(1), 1.0, 1e-12) << to_string(mode);
    }
    EXPECT_THROW(build_protection_circuit(0, ProtectionMode::kBare, McmNoise{}), ValidationError);
    EXPECT_THROW(build_protection_circuit(32, ProtectionMode::kBare, McmNoise{}), ValidationError);
}

TEST(ProtectionCircuit, ExactCurveFollowsTwoStateChain) {
    const double f = 0.05;
    const auto want = oracle::memory_flip_curve(f, 4);
    for (unsigned r = 1; r <= 4; r++) {
        for (auto mode : {ProtectionMode::kBare, ProtectionMode::kMrc}) {
            const auto d = output_distribution(build_protection_circuit(r, mode, flip_noise(f)));
            EXPECT_NEAR(d.weight(0), want[r - 1], 1e-12) << "rounds=" << r << " " << to_string(mode);
        }
    }
}

TEST(ProtectionCircuit, FixedPaulisCompileTheirFlip) {
    ProtectionVariant v;
    v.fixed_paulis = {Pauli::X, Pauli::Z, Pauli::Y};
    const auto d = output_distribution(build_protection_circuit(3, ProtectionMode::kMrc, McmNoise{}, v));
    EXPECT_NEAR(d.weight(1), 1.0, 1e-12);
}

TEST(ProtectionCircuit, XpInsertionActsAsReadoutFlip) {
    // One artificial flip in round 1 of 1 fools the feedback once.
    ProtectionVariant v;
    v.xp_rounds = 0b1;
    const auto d = output_distribution(build_protection_circuit(1, ProtectionMode::kMrc, McmNoise{}, v));
    EXPECT_NEAR(d.weight(0), 1.0, 1e-12);
}

TEST(QpSchedule, ShotBudget) {
    QpSchedule s{3, 0.1, 1000, true};
    s.validate();
    EXPECT_EQ(s.total_shots(), static_cast<uint64_t>(std::ceil(1000 / std::pow(0.8, 3))));
    EXPECT_NEAR(s.effective_shots(), s.total_shots() * std::pow(0.8, 3), 1e-9);
    s.compensate = false;
    EXPECT_EQ(s.total_shots(), 1000u);
    EXPECT_THROW((QpSchedule{2, 0.5, 10, true}.validate()), ValidationError);
    EXPECT_THROW((QpSchedule{0, 0.1, 10, true}.validate()), ValidationError);
}

TEST(QpSchedule, VariantsFollowBernoulliInsertions) {
    const QpSchedule s{2, 0.2, 200000, false};
    auto rng = make_rng(3);
    const auto variants = qp_schedule_variants(s, rng);
    uint64_t total = 0;
    for (const auto &v : variants) {
        total += v.shots;
        EXPECT_EQ(v.sign, (std::popcount(v.xp_rounds) & 1) ? -1 : 1);
        const double p = variant_probability(s, v.xp_rounds);
        EXPECT_NEAR(v.shots / 2e5, p, 5 * std::sqrt(p * (1 - p) / 2e5));
    }
    EXPECT_EQ(total, 200000u);
    EXPECT_NEAR(variant_probability(s, 0b11), 0.04, 1e-15);
}

TEST(CombineSigned, WeightsBySign) {
    std::vector<SignedCounts> parts{{1, Counts{{0, 8}, {1, 2}}, 0}, {-1, Counts{{0, 1}, {1, 1}}, 1}};
    const auto c = combine_signed(parts, 1);
    EXPECT_DOUBLE_EQ(c.signed_total, 8.0);
    EXPECT_EQ(c.raw_shots, 12u);
    EXPECT_DOUBLE_EQ(c.dist.weight(0), 7.0 / 8.0);
    EXPECT_DOUBLE_EQ(c.dist.weight(1), 1.0 / 8.0);
    std::vector<SignedCounts> neg{{-1, Counts{{0, 3}}, 1}};
    EXPECT_THROW(combine_signed(neg, 1), DegenerateDistributionError);
}

TEST(Experiment, MrcCurveMatchesChain) {
    const double f = 0.05;
    McmExperiment exp;
    exp.rounds = 3;
    exp.mode = ProtectionMode::kMrc;
    exp.noise = flip_noise(f);
    exp.shots = 40000;
    exp.seed = 10;
    const auto curve = run_mcm_experiment(exp);
    const auto want = oracle::memory_flip_curve(f, 3);
    ASSERT_EQ(curve.points.size(), 3u);
    for (const auto &pt : curve.points) {
        EXPECT_NEAR(pt.p_memory0, want[pt.rounds - 1], 5 * pt.stderr_);
        EXPECT_NEAR(pt.stderr_, std::sqrt(f * (1 - f) / exp.shots), 2e-4);
    }
}

TEST(Experiment, SignedSamplingCancelsKnownFlip) {
    const double f = 0.05;
    McmExperiment exp;
    exp.rounds = 3;
    exp.mode = ProtectionMode::kMrcQprc;
    exp.noise = flip_noise(f);
    exp.shots = 40000;
    exp.seed = 11;
    exp.p1 = f;
    const auto curve = run_mcm_experiment(exp);
    for (const auto &pt : curve.points) {
        EXPECT_NEAR(pt.p_memory0, 0.0, 5 * pt.stderr_) << "rounds=" << pt.rounds;
        EXPECT_GT(pt.shots, exp.shots);
    }
}

TEST(Experiment, CharacterizedInsertionProbability) {
    McmExperiment exp;
    exp.rounds = 1;
    exp.mode = ProtectionMode::kMrcQprc;
    exp.noise = flip_noise(0.05);
    exp.shots = 1000;
    exp.seed = 12;
    exp.characterization = TwirlConfig{50, 2000, 0, 1};
    const auto curve = run_mcm_experiment(exp);
    ASSERT_TRUE(curve.p1.has_value());
    EXPECT_NEAR(*curve.p1, 0.05, 5 * std::sqrt(0.05 * 0.95 / 1e5));
}

TEST(Experiment, DeterministicAcrossThreadsAndWarnsOnPrecision) {
    McmExperiment exp;
    exp.rounds = 2;
    exp.mode = ProtectionMode::kMrcQprc;
    exp.noise = flip_noise(0.03);
    exp.shots = 3000;
    exp.seed = 13;
    exp.p1 = 0.03;
    exp.target_precision = 1e-6;
    const auto a = run_mcm_experiment(exp);
    exp.threads = 4;
    const auto b = run_mcm_experiment(exp);
    for (std::size_t i = 0; i < a.points.size(); i++) {
        EXPECT_EQ(a.points[i].p_memory0, b.points[i].p_memory0);
    }
    EXPECT_EQ(a.warnings.size(), 2u);
}

}  // namespace
}  // namespace romit
