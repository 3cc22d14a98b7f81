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

#include "romit/noise.h"

#include <cmath>

#include "romit/dist_io.h"
#include "romit/errors.h"

namespace romit {

namespace {

void require_unit_interval(double v, const char *what) {
    if (!(v >= 0.0 && v <= 1.0)) {
        throw ValidationError(std::string(what) + " must lie in [0, 1], got " + format_double(v));
    }
}

}  // namespace

NoiseChannel::NoiseChannel(unsigned arity, std::string label, std::vector<KrausStage> stages)
    : arity_(arity), label_(std::move(label)), stages_(std::move(stages)) {
    if (arity < 1 || arity > kMaxSimQubits) {
        throw ValidationError("noise channel arity must be in [1, 10]");
    }
    for (const auto &stage : stages_) {
        uint64_t seen = 0;
        for (unsigned q : stage.qubits) {
            if (q >= arity || ((seen >> q) & 1)) {
                throw ValidationError("channel '" + label_ + "' has an invalid or repeated qubit index");
            }
            seen |= uint64_t{1} << q;
        }
        const Eigen::Index d = Eigen::Index{1} << stage.qubits.size();
        CMatrix sum = CMatrix::Zero(d, d);
        for (const auto &k : stage.ops) {
            if (k.rows() != d || k.cols() != d) {
                throw ValidationError("channel '" + label_ + "' has a Kraus operator of the wrong size");
            }
            sum += k.adjoint() * k;
        }
        const double dev = (sum - CMatrix::Identity(d, d)).cwiseAbs().maxCoeff();
        if (stage.ops.empty() || dev > 1e-10) {
            throw ValidationError("channel '" + label_ + "' is not trace preserving (sum K^dag K deviates by " +
                                  format_double(dev) + ")");
        }
    }
}

NoiseChannel NoiseChannel::identity(unsigned arity) {
    return NoiseChannel(arity, "identity", {});
}

NoiseChannel amplitude_damping(double gamma) {
    require_unit_interval(gamma, "amplitude_damping gamma");
    if (gamma == 0) {
        return NoiseChannel::identity(1);
    }
    CMatrix k0 = CMatrix::Zero(2, 2);
    CMatrix k1 = CMatrix::Zero(2, 2);
    k0(0, 0) = 1;
    k0(1, 1) = std::sqrt(1 - gamma);
    k1(0, 1) = std::sqrt(gamma);
    return NoiseChannel(1, "amplitude_damping(" + format_double(gamma) + ")", {KrausStage{{0}, {k0, k1}}});
}

NoiseChannel bit_flip(double probability) {
    require_unit_interval(probability, "bit_flip probability");
    if (probability == 0) {
        return NoiseChannel::identity(1);
    }
    CMatrix k0 = std::sqrt(1 - probability) * gates::identity();
    CMatrix k1 = std::sqrt(probability) * gates::x();
    return NoiseChannel(1, "bit_flip(" + format_double(probability) + ")", {KrausStage{{0}, {k0, k1}}});
}

NoiseChannel coherent_rotation(Pauli axis, double theta) {
    if (!std::isfinite(theta)) {
        throw ValidationError("coherent_rotation angle must be finite");
    }
    CMatrix u;
    switch (axis) {
        case Pauli::X:
            u = gates::rx(theta);
            break;
        case Pauli::Y:
            u = gates::ry(theta);
            break;
        case Pauli::Z:
            u = gates::rz(theta);
            break;
        case Pauli::I:
            throw ValidationError("coherent_rotation axis must be X, Y or Z");
    }
    return NoiseChannel(
        1,
        std::string("coherent_rotation(") + pauli_char(axis) + "," + format_double(theta) + ")",
        {KrausStage{{0}, {u}}});
}

NoiseChannel correlated_crosstalk(double delta) {
    require_unit_interval(delta, "crosstalk delta");
    // Local index = control + 2 * target.
    CMatrix k0 = CMatrix::Zero(4, 4);
    k0(0, 0) = 1;
    k0(2, 2) = 1;
    k0(1, 1) = std::sqrt(1 - delta);
    k0(3, 3) = std::sqrt(1 - delta);
    CMatrix k1 = CMatrix::Zero(4, 4);
    k1(3, 1) = std::sqrt(delta);
    k1(1, 3) = std::sqrt(delta);
    return NoiseChannel(2, "crosstalk(" + format_double(delta) + ")", {KrausStage{{0, 1}, {k0, k1}}});
}

NoiseChannel composite(unsigned arity, std::span<const ChannelPlacement> parts) {
    std::vector<KrausStage> stages;
    std::string label = "composite[";
    bool first = true;
    for (const auto &part : parts) {
        if (part.qubits.size() != part.channel.arity()) {
            throw ValidationError("channel '" + part.channel.label() + "' placed on the wrong number of qubits");
        }
        for (unsigned q : part.qubits) {
            if (q >= arity) {
                throw ValidationError("channel '" + part.channel.label() + "' placed outside the register");
            }
        }
        if (part.channel.is_identity()) {
            continue;
        }
        for (const auto &stage : part.channel.stages()) {
            KrausStage mapped{{}, stage.ops};
            for (unsigned q : stage.qubits) {
                mapped.qubits.push_back(part.qubits[q]);
            }
            stages.push_back(std::move(mapped));
        }
        label += first ? "" : ";";
        first = false;
        label += part.channel.label() + "@";
        for (std::size_t i = 0; i < part.qubits.size(); i++) {
            label += (i ? "," : "") + std::to_string(part.qubits[i]);
        }
    }
    label += "]";
    if (stages.empty()) {
        return NoiseChannel::identity(arity);
    }
    return NoiseChannel(arity, std::move(label), std::move(stages));
}

void apply_channel_inplace(QuantumState &state, const NoiseChannel &channel, std::span<const unsigned> targets) {
    if (targets.size() != channel.arity()) {
        throw ValidationError(
            "channel '" + channel.label() + "' has arity " + std::to_string(channel.arity()) + " but " +
            std::to_string(targets.size()) + " targets were given");
    }
    std::vector<unsigned> global;
    for (const auto &stage : channel.stages()) {
        global.clear();
        for (unsigned q : stage.qubits) {
            global.push_back(targets[q]);
        }
        state.apply_kraus(stage.ops, global);
    }
}

QuantumState apply_channel(QuantumState state, const NoiseChannel &channel, std::span<const unsigned> targets) {
    apply_channel_inplace(state, channel, targets);
    return state;
}

std::vector<double> noisy_outcome_probabilities(
    const QuantumState &state, const MeasurementModel &model, std::span<const unsigned> targets) {
    if (model.is_ideal()) {
        if (targets.size() != model.arity()) {
            throw ValidationError("measurement model arity does not match the measured qubits");
        }
        return state.outcome_probabilities(targets);
    }
    auto noisy = apply_channel(state, model.pre_channel(), targets);
    return noisy.outcome_probabilities(targets);
}

MeasurementSample sample_measurement(
    const QuantumState &state, const MeasurementModel &model, std::span<const unsigned> targets, Rng &rng) {
    QuantumState noisy = state;
    if (targets.size() != model.arity()) {
        throw ValidationError("measurement model arity does not match the measured qubits");
    }
    apply_channel_inplace(noisy, model.pre_channel(), targets);
    const auto probs = noisy.outcome_probabilities(targets);
    double total = 0;
    for (double p : probs) {
        total += p;
    }
    if (total < 1e-12) {
        throw NumericalError("measurement branch probabilities vanish");
    }
    std::uniform_real_distribution<double> unif(0.0, total);
    const double u = unif(rng);
    double acc = 0;
    uint64_t outcome = 0;
    for (std::size_t i = 0; i < probs.size(); i++) {
        acc += probs[i];
        if (probs[i] > 0) {
            outcome = i;
        }
        if (u < acc && probs[i] > 0) {
            break;
        }
    }
    noisy.project(targets, outcome);
    return {outcome, std::move(noisy)};
}

}  // namespace romit
