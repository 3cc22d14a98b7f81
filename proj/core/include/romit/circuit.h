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

#ifndef ROMIT_CIRCUIT_H
#define ROMIT_CIRCUIT_H

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "romit/bit_string.h"
#include "romit/noise.h"
#include "romit/signed_dist.h"

namespace romit {

/// True when the XOR of the listed register bits equals `parity`.
struct Condition {
    std::vector<unsigned> slots;
    bool parity = true;

    bool holds(uint64_t reg) const {
        bool acc = false;
        for (unsigned s : slots) {
            acc ^= ((reg >> s) & 1) != 0;
        }
        return acc == parity;
    }
};

struct GateOp {
    std::string name;
    CMatrix matrix;
    std::vector<unsigned> targets;
    std::optional<Condition> condition;
};

struct ChannelOp {
    NoiseChannel channel;
    std::vector<unsigned> targets;
};

/// Noisy measurement of `targets`; outcome bit i is written to slots[i].
struct MeasureOp {
    std::vector<unsigned> targets;
    std::vector<unsigned> slots;
    MeasurementModel model;
};

struct ResetOp {
    std::vector<unsigned> targets;
};

/// Per-shot uniformly random Pauli on each target. Slot i receives 1 when
/// the Pauli on targets[i] was X or Y, so later conditions can undo the flip.
struct TwirlOp {
    std::vector<unsigned> targets;
    std::vector<unsigned> slots;
};

using CircuitNode = std::variant<GateOp, ChannelOp, MeasureOp, ResetOp, TwirlOp>;

/// Ordered program over `num_qubits` qubits and a classical register of
/// `num_clbits` bits. Results are keyed by the `output` slots: bit i of a
/// result mask is register slot output[i].
class Circuit {
   public:
    Circuit(unsigned num_qubits, unsigned num_clbits);

    unsigned num_qubits() const {
        return n_;
    }
    unsigned num_clbits() const {
        return clbits_;
    }
    std::span<const CircuitNode> nodes() const {
        return nodes_;
    }
    std::span<const unsigned> output_slots() const {
        return output_;
    }

    Circuit &gate(std::string_view name, std::vector<unsigned> targets, std::vector<double> params = {});
    Circuit &gate(std::string name, CMatrix matrix, std::vector<unsigned> targets);
    Circuit &conditional_gate(std::string_view name, std::vector<unsigned> targets, Condition condition);
    Circuit &channel(NoiseChannel channel, std::vector<unsigned> targets);
    Circuit &measure(std::vector<unsigned> targets, std::vector<unsigned> slots, MeasurementModel model);
    Circuit &measure(std::vector<unsigned> targets, std::vector<unsigned> slots);
    Circuit &reset(std::vector<unsigned> targets);
    Circuit &twirl(std::vector<unsigned> targets, std::vector<unsigned> slots);
    Circuit &append(CircuitNode node);
    /// Defaults to every classical bit.
    Circuit &set_output(std::vector<unsigned> slots);

    /// Throws ValidationError for out-of-range targets or slots, slots
    /// written twice, conditions that read slots no earlier node wrote, and
    /// output slots that are never written.
    void validate() const;

   private:
    unsigned n_;
    unsigned clbits_;
    std::vector<CircuitNode> nodes_;
    std::vector<unsigned> output_;
};

/// A circuit over n qubits whose register mirrors the qubits: measuring
/// every qubit i into slot i with `model` after `prep`'s nodes.
Circuit with_terminal_measurement(const Circuit &prep, const MeasurementModel &model);

struct RunResult {
    Counts counts;           // keyed by the output slots
    Counts register_counts;  // keyed by the full classical register
    uint64_t shots = 0;
};

/// Runs `shots` independent shots from |0...0>.
///
/// Shots are not simulated one by one: at every measurement or twirl the
/// remaining shots of a branch are split multinomially over its outcomes and
/// each populated outcome continues with its share. This is distributed
/// exactly like per-shot simulation and costs one density matrix evolution
/// per populated branch. Identical (circuit, shots, seed) give identical
/// results.
RunResult run_circuit(const Circuit &circuit, uint64_t shots, uint64_t seed);
RunResult run_circuit(const Circuit &circuit, uint64_t shots, Rng &rng);

/// Exact distribution of the output slots, by enumerating every branch with
/// probability above `min_branch_probability`.
SignedDist output_distribution(const Circuit &circuit, double min_branch_probability = 1e-15);

/// Reads the JSON circuit format:
///
///     {"qubits": 2, "clbits": 2, "output": [1],
///      "nodes": [
///        {"op": "x", "targets": [0]},
///        {"op": "cx", "targets": [0, 1]},
///        {"op": "twirl", "targets": [1], "slots": [1]},
///        {"op": "measure", "targets": [1], "slots": [0], "noise": [...]},
///        {"op": "x", "targets": [0], "condition": {"slots": [0, 1], "equals": 0}},
///        {"op": "reset", "targets": [1]},
///        {"op": "channel", "targets": [0], "noise": [...]},
///        {"op": "rx", "targets": [0], "params": [0.1]}]}
///
/// "noise" uses the noise_from_json list form with indices local to the
/// node's targets. The result is validated before it is returned.
Circuit circuit_from_json(std::string_view json_text);

}  // namespace romit

#endif
