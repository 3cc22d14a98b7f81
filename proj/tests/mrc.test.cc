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
#include <map>
#include <vector>

#include "romit/errors.h"
#include "romit/mrc.h"

namespace romit {
namespace {

TEST(PauliString, FlipMaskMarksXAndY) {
    const auto p = PauliString::parse("XIZY");
    EXPECT_EQ(p.size(), 4u);
    EXPECT_EQ(p.ops[0], Pauli::X);
    EXPECT_EQ(p.flip_mask(), 0b1001u);
    EXPECT_EQ(p.str(), "XIZY");
    EXPECT_THROW(PauliString::parse("XQ"), ValidationError);
}

TEST(PauliString, SamplingIsUniform) {
    auto rng = make_rng(12);
    std::map<std::string, int> seen;
    const int draws = 16000;
    for (int i = 0; i < draws; i++) {
        seen[sample_pauli(2, rng).str()]++;
    }
    EXPECT_EQ(seen.size(), 16u);
    for (const auto &[s, c] : seen) {
        EXPECT_NEAR(c / double(draws), 1.0 / 16, 5 * std::sqrt((1.0 / 16) * (15.0 / 16) / draws)) << s;
    }
}

TEST(TwirlConfig, SplitsAndValidates) {
    const auto cfg = TwirlConfig::from_total(100005, 100, 3);
    EXPECT_EQ(cfg.shots_per_randomization, 1000u);
    EXPECT_EQ(cfg.total_shots(), 100000u);
    TwirlConfig zero;
    zero.randomizations = 0;
    EXPECT_THROW(zero.validate(), ValidationError);
}

TEST(Twirl, PauliFramesAreUndoneInPostProcessing) {
    Circuit prep(3, 0);
    prep.gate("x", {1});
    for (const char *s : {"III", "XXX", "YZI", "ZYX"}) {
        const auto counts = measure_with_pauli(prep, MeasurementModel::ideal(3), PauliString::parse(s), 500, 1);
        ASSERT_EQ(counts.size(), 1u) << s;
        EXPECT_EQ(counts.begin()->first, 0b010u) << s;
    }
}

TEST(Twirl, AmplitudeDampingBecomesSymmetricFlip) {
    // Damping gamma acts as flip probability gamma on |1> and 0 on |0>; the
    // twirl averages the two into gamma / 2 for either preparation.
    const double gamma = 0.1;
    TwirlConfig cfg{200, 500, 21, 2};
    const auto m = MeasurementModel(amplitude_damping(gamma));
    const auto p0 = characterize_error_distribution(m, 1, cfg, 0);
    const auto p1 = characterize_error_distribution(m, 1, cfg, 1);
    const double tol = 5 * std::sqrt(gamma / 2 * (1 - gamma / 2) / cfg.total_shots()) +
                       5 * gamma * std::sqrt(0.25 / cfg.randomizations);
    EXPECT_NEAR(p0.weight(1), gamma / 2, tol);
    EXPECT_NEAR(p1.weight(1), gamma / 2, tol);
}

TEST(Twirl, UntwirledDampingIsAsymmetric) {
    Circuit ground(1, 0), excited(1, 0);
    excited.gate("x", {0});
    const auto m = MeasurementModel(amplitude_damping(0.1));
    EXPECT_EQ(plain_measure(ground, m, 1000, 2).count(1), 0u);
    EXPECT_NEAR(plain_measure(excited, m, 100000, 2).at(0) / 1e5, 0.1, 5 * std::sqrt(0.09 / 1e5));
}

TEST(Twirl, DeterministicAcrossThreads) {
    const auto m = MeasurementModel(amplitude_damping(0.05));
    TwirlConfig a{16, 200, 5, 1};
    TwirlConfig b{16, 200, 5, 4};
    Circuit prep(2, 0);
    prep.gate("h", {0});
    const std::vector<ChannelPlacement> parts{{amplitude_damping(0.05), {1}}};
    const auto m2 = MeasurementModel(composite(2, parts));
    EXPECT_EQ(twirled_measure(prep, m2, a), twirled_measure(prep, m2, b));
    EXPECT_EQ(twirled_confusion(m, 1, a).m, twirled_confusion(m, 1, b).m);
}

TEST(Twirl, PrepWithMeasurementRejected) {
    Circuit prep(1, 1);
    prep.measure({0}, {0});
    EXPECT_THROW(plain_measure(prep, MeasurementModel::ideal(1), 10, 1), ValidationError);
}

TEST(Twirl, ConfusionBecomesXorCirculant) {
    const auto m = MeasurementModel(amplitude_damping(0.1));
    TwirlConfig cfg{400, 250, 8, 2};
    const auto tw = twirled_confusion(m, 1, cfg);
    const auto d = diagnostics(tw);
    EXPECT_LT(d.diag_spread, 0.02);
    EXPECT_LT(d.asymmetry, 0.02);
}

}  // namespace
}  // namespace romit
