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
#include <numeric>
#include <vector>

#include "romit/circuit.h"
#include "romit/errors.h"
#include "romit/gates.h"
#include "romit/noise.h"
#include "romit/parallel.h"
#include "romit/rng.h"
#include "romit/state.h"

namespace romit {
namespace {

std::vector<unsigned> all_qubits(unsigned n) {
    std::vector<unsigned> q(n);
    std::iota(q.begin(), q.end(), 0u);
    return q;
}

TEST(Rng, DerivedSeedsAreStableAndDistinct) {
    EXPECT_EQ(derive_seed(1, 2), derive_seed(1, 2));
    EXPECT_NE(derive_seed(1, 2), derive_seed(1, 3));
    EXPECT_NE(derive_seed(1, 2), derive_seed(2, 1));
    auto a = make_rng(5, 9);
    auto b = make_rng(derive_seed(5, 9));
    EXPECT_EQ(a(), b());
}

TEST(Rng, MultinomialConservesTrials) {
    auto rng = make_rng(3);
    const std::vector<double> p{0.5, 0.0, 0.25, 0.25};
    const auto c = sample_multinomial(100000, p, rng);
    EXPECT_EQ(std::accumulate(c.begin(), c.end(), uint64_t{0}), 100000u);
    EXPECT_EQ(c[1], 0u);
    EXPECT_NEAR(c[0] / 1e5, 0.5, 5 * std::sqrt(0.25 / 1e5));
    const std::vector<double> bad{0.5, -0.5};
    EXPECT_THROW(sample_multinomial(10, bad, rng), ValidationError);
}

TEST(Gates, StandardSetIsUnitary) {
    auto rng = make_rng(1);
    for (const auto &u : {gates::x(), gates::y(), gates::z(), gates::h(), gates::s(), gates::cnot(), gates::cz(),
                          gates::rx(0.3), gates::haar_su2(rng)}) {
        EXPECT_TRUE(is_unitary(u));
    }
    EXPECT_NEAR(std::abs(gates::haar_su2(rng).determinant() - Complex(1, 0)), 0.0, 1e-12);
    EXPECT_THROW(gates::by_name("toffoli", {}), ValidationError);
    EXPECT_EQ(pauli_from_char('Y'), Pauli::Y);
}

TEST(State, BellPairPopulations) {
    QuantumState st(2);
    const std::vector<unsigned> q0{0}, q01{0, 1};
    st.apply_unitary(gates::h(), q0);
    st.apply_unitary(gates::cnot(), q01);
    const auto p = st.probabilities();
    EXPECT_NEAR(p[0], 0.5, 1e-12);
    EXPECT_NEAR(p[3], 0.5, 1e-12);
    EXPECT_NEAR(p[1] + p[2], 0.0, 1e-12);
    st.check_invariants();
    st.project(q0, 1);
    EXPECT_NEAR(st.probabilities()[3], 1.0, 1e-12);
}

TEST(State, ResetReturnsQubitToGround) {
    auto st = QuantumState::basis(2, 0b11);
    const std::vector<unsigned> q1{1};
    st.reset(q1);
    EXPECT_NEAR(st.probabilities()[0b01], 1.0, 1e-12);
}

TEST(Noise, AmplitudeDampingDecaysExcitedState) {
    for (double gamma : {0.0, 0.05, 0.3}) {
        auto st = QuantumState::basis(1, 1);
        const std::vector<unsigned> q{0};
        apply_channel_inplace(st, amplitude_damping(gamma), q);
        EXPECT_NEAR(st.probabilities()[0], gamma, 1e-12);
        st.check_invariants();
    }
}

TEST(Noise, CrosstalkFlipsTargetOnlyWhenControlIsSet) {
    const double delta = 0.15;
    const std::vector<unsigned> q{0, 1};
    auto off = QuantumState::basis(2, 0b00);
    apply_channel_inplace(off, correlated_crosstalk(delta), q);
    EXPECT_NEAR(off.probabilities()[0], 1.0, 1e-12);
    auto on = QuantumState::basis(2, 0b01);
    apply_channel_inplace(on, correlated_crosstalk(delta), q);
    EXPECT_NEAR(on.probabilities()[0b11], delta, 1e-12);
    EXPECT_NEAR(on.probabilities()[0b01], 1 - delta, 1e-12);
}

TEST(Noise, CoherentRotationLeaksPopulation) {
    const double theta = 0.2;
    auto st = QuantumState(1);
    const std::vector<unsigned> q{0};
    apply_channel_inplace(st, coherent_rotation(Pauli::X, theta), q);
    EXPECT_NEAR(st.probabilities()[1], std::pow(std::sin(theta / 2), 2), 1e-12);
}

TEST(Noise, JsonModelComposesPlacements) {
    const auto ch = noise_from_json(
        R"([{"type": "bit_flip", "qubits": [1], "p": 0.25},
            {"type": "amplitude_damping", "qubits": [0], "gamma": 0.5}])",
        2);
    auto st = QuantumState::basis(2, 0b01);
    const auto q = all_qubits(2);
    apply_channel_inplace(st, ch, q);
    const auto p = st.probabilities();
    EXPECT_NEAR(p[0b00], 0.5 * 0.75, 1e-12);
    EXPECT_NEAR(p[0b11], 0.5 * 0.25, 1e-12);
    EXPECT_THROW(noise_from_json(R"([{"type": "bit_flip", "qubits": [2], "p": 0.1}])", 2), ValidationError);
    EXPECT_THROW(noise_from_json(R"([{"type": "bit_flip", "qubits": [0], "p": 1.5}])", 2), ValidationError);
    EXPECT_THROW(noise_from_json(R"([{"type": "melt", "qubits": [0]}])", 2), ValidationError);
}

TEST(Noise, NonTracePreservingStageRejected) {
    CMatrix k = CMatrix::Identity(2, 2) * 0.5;
    EXPECT_THROW(NoiseChannel(1, "half", {KrausStage{{0}, {k}}}), ValidationError);
}

TEST(Circuit, ValidationCatchesWiringErrors) {
    Circuit out_of_range(2, 1);
    out_of_range.gate("x", {2});
    EXPECT_THROW(out_of_range.validate(), ValidationError);

    Circuit twice(1, 1);
    twice.measure({0}, {0}).measure({0}, {0});
    EXPECT_THROW(twice.validate(), ValidationError);

    Circuit early(2, 2);
    early.conditional_gate("x", {1}, Condition{{0}, true}).measure({0}, {0});
    EXPECT_THROW(early.validate(), ValidationError);

    Circuit unwritten(1, 2);
    unwritten.measure({0}, {0}).set_output({1});
    EXPECT_THROW(unwritten.validate(), ValidationError);
}

TEST(Circuit, ExactDistributionOfBellPair) {
    Circuit c(2, 2);
    c.gate("h", {0}).gate("cx", {0, 1}).measure({0, 1}, {0, 1});
    const auto d = output_distribution(c);
    EXPECT_NEAR(d.weight(0b00), 0.5, 1e-12);
    EXPECT_NEAR(d.weight(0b11), 0.5, 1e-12);
    EXPECT_EQ(d.support_size(), 2u);
}

TEST(Circuit, SampledCountsMatchExactDistribution) {
    Circuit c(3, 3);
    c.gate("ry", {0}, {1.1}).gate("cx", {0, 1}).gate("h", {2});
    c.channel(amplitude_damping(0.2), {1});
    const ChannelPlacement flip{bit_flip(0.05), {2}};
    c.measure({0, 1, 2}, {0, 1, 2}, MeasurementModel(composite(3, std::span(&flip, 1))));
    const auto exact = output_distribution(c);
    const uint64_t shots = 200000;
    const auto run = run_circuit(c, shots, 17);
    EXPECT_EQ(run.shots, shots);
    for (const auto &e : exact.entries()) {
        const double got = run.counts.count(e.mask) ? run.counts.at(e.mask) / double(shots) : 0.0;
        EXPECT_NEAR(got, e.weight, 5 * std::sqrt(e.weight * (1 - e.weight) / shots) + 1e-9);
    }
}

TEST(Circuit, MidCircuitFeedbackCorrectsQubit) {
    // Measure a |1>, then flip it back when the bit reads 1.
    Circuit c(1, 2);
    c.gate("x", {0}).measure({0}, {0}).conditional_gate("x", {0}, Condition{{0}, true}).measure({0}, {1});
    c.set_output({1});
    const auto d = output_distribution(c);
    EXPECT_NEAR(d.weight(0), 1.0, 1e-12);
}

TEST(Circuit, TwirlRecordsFlipAndPreservesCorrectedOutcome) {
    Circuit c(2, 4);
    c.gate("x", {1}).twirl({0, 1}, {2, 3}).measure({0, 1}, {0, 1});
    const auto reg = run_circuit(c, 20000, 4).register_counts;
    for (const auto &[r, n] : reg) {
        const uint64_t raw = r & 0b11;
        const uint64_t flip = (r >> 2) & 0b11;
        EXPECT_EQ(raw ^ flip, 0b10u) << "register " << r << " seen " << n << " times";
    }
    EXPECT_GT(reg.size(), 2u);
}

TEST(Circuit, SameSeedSameCounts) {
    Circuit c(2, 2);
    c.gate("h", {0}).gate("h", {1}).measure({0, 1}, {0, 1});
    EXPECT_EQ(run_circuit(c, 5000, 99).counts, run_circuit(c, 5000, 99).counts);
    EXPECT_NE(run_circuit(c, 5000, 99).counts, run_circuit(c, 5000, 100).counts);
}

TEST(Circuit, JsonRoundTripsThroughExecution) {
    const auto c = circuit_from_json(R"({
        "qubits": 2, "clbits": 2,
        "nodes": [
            {"op": "x", "targets": [0]},
            {"op": "measure", "targets": [0], "slots": [0]},
            {"op": "x", "targets": [1], "condition": {"slots": [0], "equals": 1}},
            {"op": "measure", "targets": [1], "slots": [1]}
        ]})");
    const auto d = output_distribution(c);
    EXPECT_NEAR(d.weight(0b11), 1.0, 1e-12);
    EXPECT_THROW(circuit_from_json(R"({"qubits": 1, "clbits": 1, "nodes": [{"op": "warp", "targets": [0]}]})"),
                 ValidationError);
}

TEST(Parallel, ResultsIndependentOfThreadCount) {
    auto work = [](unsigned threads) {
        std::vector<uint64_t> out(64);
        parallel_for(out.size(), threads, [&](std::size_t i) { out[i] = make_rng(7, i)(); });
        return out;
    };
    EXPECT_EQ(work(1), work(4));
    EXPECT_THROW(parallel_for(8, 3, [](std::size_t i) {
                     if (i == 5) {
                         throw NumericalError("boom");
                     }
                 }),
                 NumericalError);
}

}  // namespace
}  // namespace romit
