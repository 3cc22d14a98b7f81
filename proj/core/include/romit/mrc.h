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

#ifndef ROMIT_MRC_H
#define ROMIT_MRC_H

#include <string>
#include <string_view>
#include <vector>

#include "romit/circuit.h"
#include "romit/confusion.h"

namespace romit {

/// ops[i] acts on qubit i.
struct PauliString {
    std::vector<Pauli> ops;

    unsigned size() const {
        return static_cast<unsigned>(ops.size());
    }
    /// Bit i set iff ops[i] is X or Y, i.e. the Pauli flips readout bit i.
    uint64_t flip_mask() const;
    /// Tensor notation, leftmost factor = qubit 0: "X⊗I⊗Z⊗Y" is "XIZY".
    std::string str() const;
    static PauliString parse(std::string_view text);
};

/// Uniform over all 4^n strings.
PauliString sample_pauli(unsigned n, Rng &rng);

struct TwirlConfig {
    unsigned randomizations = 100;
    uint64_t shots_per_randomization = 1000;
    uint64_t seed = 0;
    unsigned threads = 1;

    uint64_t total_shots() const {
        return randomizations * shots_per_randomization;
    }
    void validate() const;

    /// Splits `total` shots evenly over `randomizations` (remainder dropped).
    static TwirlConfig from_total(uint64_t total, unsigned randomizations, uint64_t seed);
};

/// Runs prep, then `pauli`, then measures all qubits through `model`, and
/// XORs every outcome with pauli.flip_mask(). prep may only contain gates,
/// channels and resets.
Counts measure_with_pauli(
    const Circuit &prep, const MeasurementModel &model, const PauliString &pauli, uint64_t shots, uint64_t seed);

/// Untwirled reference: prep followed by measurement through `model`.
Counts plain_measure(const Circuit &prep, const MeasurementModel &model, uint64_t shots, uint64_t seed);

/// Randomization k draws its Pauli and its shots from derive_seed(seed, k).
Counts twirled_measure(const Circuit &prep, const MeasurementModel &model, const TwirlConfig &cfg);

/// Twirled readout of basis state `basis` (|0...0> by default), returned as
/// the estimated bit-flip distribution: outcome x counts toward x xor basis.
SignedDist characterize_error_distribution(
    const MeasurementModel &model, unsigned n, const TwirlConfig &cfg, uint64_t basis = 0);

/// Twirled response for every basis preparation; preparation j uses
/// seed derive_seed(cfg.seed, j). Limited to 4 qubits.
ConfusionMatrix twirled_confusion(const MeasurementModel &model, unsigned n, const TwirlConfig &cfg);

}  // namespace romit

#endif
