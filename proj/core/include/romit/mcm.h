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

#ifndef ROMIT_MCM_H
#define ROMIT_MCM_H

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "romit/circuit.h"
#include "romit/mrc.h"

namespace romit {

enum class ProtectionMode {
    kBare,     // feedback on the raw ancilla bit
    kMrc,      // random Pauli before the ancilla readout, feedback on raw xor flip
    kMrcQprc,  // kMrc plus signed X_p sampling over the rounds
};

std::string to_string(ProtectionMode mode);
/// Accepts "bare", "mrc" and "mrc+qprc".
ProtectionMode parse_protection_mode(std::string_view text);

inline constexpr unsigned kMemoryQubit = 0;
inline constexpr unsigned kAncillaQubit = 1;
/// 2 register slots per round plus the final memory bit.
inline constexpr unsigned kMaxProtectionRounds = 31;

struct McmNoise {
    MeasurementModel ancilla_readout = MeasurementModel::ideal(1);
    /// Applied to the memory qubit at the end of every round.
    NoiseChannel memory_idle = NoiseChannel::identity(1);
    MeasurementModel memory_readout = MeasurementModel::ideal(1);

    void validate() const;
};

struct ProtectionVariant {
    /// Bit r set: round r carries an artificial X on the ancilla just before
    /// its readout.
    uint64_t xp_rounds = 0;
    /// If non-empty, round r inserts fixed_paulis[r] instead of a random
    /// Pauli, and the feedback condition is compiled for that Pauli.
    std::vector<Pauli> fixed_paulis;
};

/// Memory qubit 0 starts in |1>. Round r: CNOT memory -> ancilla, the MRC
/// Pauli (modes other than bare), X_p if the variant asks, ancilla readout
/// into slot 2r, X on the memory when the corrected bit is 0, ancilla reset,
/// memory idle noise. Under random MRC the Pauli's flip bit lands in slot
/// 2r + 1 and the corrected bit is slot 2r xor slot 2r + 1. The memory is
/// read into slot 2R, the only output slot.
Circuit build_protection_circuit(
    unsigned rounds, ProtectionMode mode, const McmNoise &noise, const ProtectionVariant &variant = {});

/// Signed sampling plan for X_p insertions.
struct QpSchedule {
    unsigned rounds = 1;
    double p1 = 0;        // per-round insertion probability
    uint64_t shots = 0;   // budget N_s before compensation
    bool compensate = true;

    /// Throws ValidationError unless rounds >= 1 and 0 <= p1 < 1/2.
    void validate() const;
    /// N_s / (1 - 2 p1)^R when compensating (rounded up), else N_s.
    uint64_t total_shots() const;
    /// total_shots() * (1 - 2 p1)^R: the unsigned-equivalent sample size.
    double effective_shots() const;
};

struct VariantAllocation {
    uint64_t xp_rounds = 0;
    int sign = 1;  // (-1)^popcount(xp_rounds)
    uint64_t shots = 0;
};

/// Per shot, every round independently carries X_p with probability p1.
/// Shots are grouped by insertion pattern; patterns are returned in
/// increasing mask order and only when they received shots.
std::vector<VariantAllocation> qp_schedule_variants(const QpSchedule &schedule, Rng &rng);

/// Probability that a shot follows pattern `xp_rounds`.
double variant_probability(const QpSchedule &schedule, uint64_t xp_rounds);

struct SignedCounts {
    int sign = 1;
    Counts counts;
    uint64_t xp_rounds = 0;
};

struct SignedCombination {
    SignedDist dist;          // weight(x) = sum sign*counts(x) / signed_total
    double signed_total = 0;  // sum sign*shots
    uint64_t raw_shots = 0;
};

/// Throws DegenerateDistributionError when the signed total is <= 0.
SignedCombination combine_signed(std::span<const SignedCounts> results, unsigned width);

struct McmExperiment {
    unsigned rounds = 10;
    ProtectionMode mode = ProtectionMode::kMrc;
    McmNoise noise;
    uint64_t shots = 10000;
    uint64_t seed = 0;
    /// Insertion probability for kMrcQprc. When absent it is characterized
    /// as 1 - p_0 of the twirled ancilla readout using `characterization`.
    std::optional<double> p1;
    TwirlConfig characterization;
    bool compensate = true;
    /// Rounds whose standard error exceeds this (when > 0) get a warning.
    double target_precision = 0;
    unsigned threads = 1;
};

struct McmPoint {
    unsigned rounds = 0;
    double p_memory0 = 0;
    double stderr_ = 0;
    uint64_t shots = 0;
    double effective_shots = 0;
};

struct McmCurve {
    ProtectionMode mode = ProtectionMode::kBare;
    std::vector<McmPoint> points;  // one per N = 1..R
    std::optional<double> p1;
    std::vector<std::string> warnings;
};

/// Runs the N-round protection circuit for N = 1..R. Circuit N uses the
/// substream derive_seed(seed, N); characterization uses derive_seed(seed, 0).
McmCurve run_mcm_experiment(const McmExperiment &exp);

}  // namespace romit

#endif
