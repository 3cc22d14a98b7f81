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

#ifndef ROMIT_NOISE_H
#define ROMIT_NOISE_H

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "romit/state.h"

namespace romit {

/// One Kraus set acting on a subset of the channel's qubits.
struct KrausStage {
    std::vector<unsigned> qubits;
    std::vector<CMatrix> ops;
};

/// CPTP map on `arity` local qubits, stored as a sequence of Kraus stages
/// applied in order. Composing channels concatenates stages instead of
/// multiplying Kraus sets out, so an eight-qubit readout model stays cheap.
class NoiseChannel {
   public:
    NoiseChannel() : NoiseChannel(identity(1)) {
    }
    /// Throws ValidationError when a stage is not trace preserving to 1e-10
    /// or names a qubit outside [0, arity).
    NoiseChannel(unsigned arity, std::string label, std::vector<KrausStage> stages);

    static NoiseChannel identity(unsigned arity);

    unsigned arity() const {
        return arity_;
    }
    const std::string &label() const {
        return label_;
    }
    std::span<const KrausStage> stages() const {
        return stages_;
    }
    bool is_identity() const {
        return stages_.empty();
    }

   private:
    unsigned arity_ = 1;
    std::string label_;
    std::vector<KrausStage> stages_;
};

/// T1-style decay: |1> -> |0> with probability gamma.
NoiseChannel amplitude_damping(double gamma);
/// Classical X flip with the given probability.
NoiseChannel bit_flip(double probability);
/// exp(-i theta/2 P) for P in {X, Y, Z}.
NoiseChannel coherent_rotation(Pauli axis, double theta);
/// Two-qubit channel (local qubit 0 = control, 1 = target) that flips the
/// target with probability delta when the control is |1>.
NoiseChannel correlated_crosstalk(double delta);

struct ChannelPlacement {
    NoiseChannel channel;
    std::vector<unsigned> qubits;
};

/// Applies the parts in order; part i's local qubit j lands on qubits[j].
NoiseChannel composite(unsigned arity, std::span<const ChannelPlacement> parts);

/// Builds a composite channel from the JSON list form
///
///     [{"type": "amplitude_damping", "qubits": [0], "gamma": 0.06},
///      {"type": "bit_flip", "qubits": [1], "p": 0.01},
///      {"type": "coherent_rotation", "qubits": [2], "axis": "x", "theta": 0.3},
///      {"type": "crosstalk", "qubits": [0, 1], "delta": 0.15}]
///
/// Errors are ValidationError messages prefixed with `where` plus the JSON
/// pointer of the offending field.
NoiseChannel noise_from_json(std::string_view json_text, unsigned arity, std::string_view where = "");

QuantumState apply_channel(QuantumState state, const NoiseChannel &channel, std::span<const unsigned> targets);
void apply_channel_inplace(QuantumState &state, const NoiseChannel &channel, std::span<const unsigned> targets);

/// Noisy computational-basis readout: a channel Lambda followed by ideal
/// projectors, so Sum_i E_i = I holds by construction.
class MeasurementModel {
   public:
    explicit MeasurementModel(unsigned arity = 1) : pre_(NoiseChannel::identity(arity)) {
    }
    explicit MeasurementModel(NoiseChannel pre_channel) : pre_(std::move(pre_channel)) {
    }

    static MeasurementModel ideal(unsigned arity) {
        return MeasurementModel(arity);
    }

    unsigned arity() const {
        return pre_.arity();
    }
    const NoiseChannel &pre_channel() const {
        return pre_;
    }
    bool is_ideal() const {
        return pre_.is_identity();
    }
    std::string description() const {
        return is_ideal() ? "ideal(" + std::to_string(arity()) + ")" : pre_.label();
    }

   private:
    NoiseChannel pre_;
};

/// Tr[E_i Lambda(rho)] for every outcome i of the listed qubits.
std::vector<double> noisy_outcome_probabilities(
    const QuantumState &state, const MeasurementModel &model, std::span<const unsigned> targets);

struct MeasurementSample {
    uint64_t outcome;
    QuantumState post_state;
};

/// Applies Lambda, draws an outcome by the Born rule, and returns the
/// normalized post-measurement state.
MeasurementSample sample_measurement(
    const QuantumState &state, const MeasurementModel &model, std::span<const unsigned> targets, Rng &rng);

}  // namespace romit

#endif
