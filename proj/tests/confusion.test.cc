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
#include <random>
#include <vector>

#include "oracles.h"
#include "romit/confusion.h"
#include "romit/errors.h"

namespace romit {
namespace {

MeasurementModel independent_flips(std::vector<double> p) {
    std::vector<ChannelPlacement> parts;
    for (unsigned q = 0; q < p.size(); q++) {
        parts.push_back({bit_flip(p[q]), {q}});
    }
    return MeasurementModel(composite(static_cast<unsigned>(p.size()), parts));
}

// Dense column-stochastic matrix for independent flips, built entry by entry.
Eigen::MatrixXd flip_matrix(const std::vector<double> &p) {
    const std::size_t d = std::size_t{1} << p.size();
    Eigen::MatrixXd m(d, d);
    for (std::size_t i = 0; i < d; i++) {
        for (std::size_t j = 0; j < d; j++) {
            double v = 1;
            for (std::size_t q = 0; q < p.size(); q++) {
                v *= (((i ^ j) >> q) & 1) ? p[q] : 1 - p[q];
            }
            m(i, j) = v;
        }
    }
    return m;
}

TEST(ConfusionMatrix, XorChannelIsCirculant) {
    SignedDist p(2, {{0, 0.7}, {1, 0.2}, {3, 0.1}});
    const auto m = ConfusionMatrix::from_xor_channel(p);
    m.validate();
    EXPECT_DOUBLE_EQ(m.m(0b10, 0b01), 0.1);
    EXPECT_DOUBLE_EQ(m.m(0b11, 0b10), 0.2);
    EXPECT_DOUBLE_EQ(m.m(0b01, 0b01), 0.7);
    const auto d = diagnostics(m);
    EXPECT_NEAR(d.diag_spread, 0.0, 1e-15);
    EXPECT_NEAR(d.xor_fit_residual, 0.0, 1e-15);
    EXPECT_LT(tvd(d.xor_fit, p), 1e-15);
}

TEST(ConfusionMatrix, ValidateRejectsNonStochastic) {
    ConfusionMatrix m{1, Eigen::MatrixXd::Identity(2, 2) * 0.9};
    EXPECT_THROW(m.validate(), ValidationError);
}

TEST(ConfusionMatrix, LocalKroneckerPutsQubitZeroLast) {
    LocalConfusionSet set = LocalConfusionSet::identity(2);
    set.mats[0] << 0.9, 0.2, 0.1, 0.8;
    set.mats[1] << 0.95, 0.0, 0.05, 1.0;
    const auto full = set.kronecker();
    EXPECT_NEAR(full.m(0b01, 0b00), 0.1 * 0.95, 1e-15);
    EXPECT_NEAR(full.m(0b10, 0b00), 0.9 * 0.05, 1e-15);
    EXPECT_NEAR(full.m(0b00, 0b11), 0.2 * 0.0, 1e-15);
}

TEST(Correction, FullInversionUndoesApply) {
    std::mt19937_64 rng(2);
    const std::vector<double> flips{0.05, 0.12, 0.08};
    ConfusionMatrix m{3, flip_matrix(flips)};
    const auto ideal = oracle::random_dist(3, 0.4, 5, rng);
    const auto noisy = apply(m, ideal);
    EXPECT_LT(tvd(correct_full(m, noisy), ideal), 1e-12);
}

TEST(Correction, ExactInversionIsExact) {
    ConfusionMatrix m{1, Eigen::MatrixXd(2, 2)};
    m.m << 0.75, 0.25, 0.25, 0.75;
    RationalDist noisy(1, {{0, Rational(5, 8)}, {1, Rational(3, 8)}});
    const auto ideal = correct_full_exact(m, noisy);
    EXPECT_EQ(ideal.weight(0), Rational(3, 4));
    EXPECT_EQ(ideal.weight(1), Rational(1, 4));
}

TEST(Correction, LocalMatchesFullForProductNoise) {
    std::mt19937_64 rng(4);
    LocalConfusionSet set = LocalConfusionSet::identity(4);
    set.mats[0] << 0.97, 0.06, 0.03, 0.94;
    set.mats[1] << 0.9, 0.1, 0.1, 0.9;
    set.mats[2] << 0.99, 0.2, 0.01, 0.8;
    set.mats[3] << 0.95, 0.04, 0.05, 0.96;
    const auto full = set.kronecker();
    const auto ideal = oracle::random_dist(4, 0.3, 7, rng);
    const auto noisy = apply(full, ideal);
    EXPECT_LT(tvd(correct_local(set, noisy), ideal), 1e-12);
    EXPECT_LT(tvd(correct_local(set, noisy), correct_full(full, noisy)), 1e-12);
}

TEST(Correction, SingularInputsThrow) {
    ConfusionMatrix m{1, Eigen::MatrixXd::Constant(2, 2, 0.5)};
    EXPECT_THROW(correct_full(m, SignedDist::delta(1)), SingularMatrixError);
    LocalConfusionSet set = LocalConfusionSet::identity(2);
    set.mats[1] = Eigen::Matrix2d::Constant(0.5);
    EXPECT_THROW(correct_local(set, SignedDist::delta(2)), SingularMatrixError);
}

TEST(Scan, FullScanEstimatesIndependentFlips) {
    const std::vector<double> flips{0.05, 0.1};
    const uint64_t shots = 50000;
    const auto m = build_full_confusion(independent_flips(flips), 2, shots, 8);
    m.validate();
    const auto want = flip_matrix(flips);
    for (int i = 0; i < 4; i++) {
        for (int j = 0; j < 4; j++) {
            const double s = std::sqrt(want(i, j) * (1 - want(i, j)) / shots);
            EXPECT_NEAR(m.m(i, j), want(i, j), 5 * s + 1e-12);
        }
    }
    EXPECT_THROW(build_full_confusion(MeasurementModel::ideal(5), 5, 10, 1), ValidationError);
}

TEST(Scan, ThreadCountDoesNotChangeResult) {
    const auto model = independent_flips({0.05, 0.1, 0.02});
    const auto a = build_full_confusion(model, 3, 2000, 5, 1);
    const auto b = build_full_confusion(model, 3, 2000, 5, 3);
    EXPECT_EQ(a.m, b.m);
    const auto la = build_local_confusions(model, 3, 2000, 5, 1);
    const auto lb = build_local_confusions(model, 3, 2000, 5, 4);
    for (unsigned q = 0; q < 3; q++) {
        EXPECT_EQ(la.mats[q], lb.mats[q]);
    }
}

TEST(Scan, LocalScanSeesPerQubitFlips) {
    const std::vector<double> flips{0.05, 0.1, 0.2};
    const uint64_t shots = 40000;
    const auto set = build_local_confusions(independent_flips(flips), 3, shots, 6);
    for (unsigned q = 0; q < 3; q++) {
        const double s = 5 * std::sqrt(0.25 / shots);
        EXPECT_NEAR(set.mats[q](1, 0), flips[q], s);
        EXPECT_NEAR(set.mats[q](0, 1), flips[q], s);
    }
}

TEST(Diagnostics, AmplitudeDampingIsAsymmetric) {
    const auto m = build_full_confusion(MeasurementModel(amplitude_damping(0.1)), 1, 20000, 3);
    const auto d = diagnostics(m);
    EXPECT_GT(d.diag_spread, 0.08);
    EXPECT_GT(d.asymmetry, 0.08);
    EXPECT_NEAR(condition_number(ConfusionMatrix{1, Eigen::Matrix2d::Identity()}), 1.0, 1e-12);
}

TEST(Io, CsvHasHeaderAndRows) {
    ConfusionMatrix m{1, Eigen::Matrix2d::Identity()};
    const auto csv = write_confusion_csv(m, {{"seed", "1"}});
    EXPECT_NE(csv.find("# seed: 1"), std::string::npos);
    EXPECT_NE(csv.find("outcome,prep_0,prep_1"), std::string::npos);
    EXPECT_NE(write_diagnostics_json(diagnostics(m)).find("diag_spread"), std::string::npos);
}

}  // namespace
}  // namespace romit
