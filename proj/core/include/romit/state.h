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

#ifndef ROMIT_STATE_H
#define ROMIT_STATE_H

#include <cstdint>
#include <span>
#include <vector>

#include "romit/gates.h"

namespace romit {

inline constexpr unsigned kMaxSimQubits = 10;

/// Density matrix on up to ten qubits. Basis index bit i is qubit i.
///
/// A state is owned by one worker at a time; the mutators below update it in
/// place and keep it Hermitian with unit trace.
class QuantumState {
   public:
    /// |0...0><0...0|
    explicit QuantumState(unsigned n);

    static QuantumState basis(unsigned n, uint64_t mask);
    /// Throws ValidationError unless rho is a valid density matrix.
    static QuantumState from_density_matrix(CMatrix rho, double tol = 1e-10);

    unsigned num_qubits() const {
        return n_;
    }
    const CMatrix &rho() const {
        return rho_;
    }

    /// Computational basis populations, length 2^n.
    std::vector<double> probabilities() const;
    /// Marginal outcome distribution over `targets` (local bit i <-> targets[i]).
    std::vector<double> outcome_probabilities(std::span<const unsigned> targets) const;

    /// rho <- U rho U^dagger on the listed qubits. Throws for non-unitary U.
    void apply_unitary(const CMatrix &u, std::span<const unsigned> targets);
    /// rho <- sum_k K rho K^dagger. Complete positivity is the caller's job.
    void apply_kraus(std::span<const CMatrix> ops, std::span<const unsigned> targets);
    /// Collapses onto `outcome` for the listed qubits and renormalizes.
    /// Throws NumericalError when the branch has probability below 1e-12.
    void project(std::span<const unsigned> targets, uint64_t outcome);
    /// Trace out the listed qubits and replace them with |0>.
    void reset(std::span<const unsigned> targets);

    /// Throws NumericalError when Hermiticity, unit trace, or positivity
    /// (eigenvalues >= -1e-9) fails.
    void check_invariants(double tol = 1e-10) const;

   private:
    void check_targets(std::span<const unsigned> targets) const;

    unsigned n_;
    CMatrix rho_;
};

QuantumState apply_unitary(QuantumState state, const CMatrix &gate, std::span<const unsigned> targets);

}  // namespace romit

#endif
