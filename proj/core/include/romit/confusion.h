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

#ifndef ROMIT_CONFUSION_H
#define ROMIT_CONFUSION_H

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "romit/dist_io.h"
#include "romit/noise.h"
#include "romit/signed_dist.h"

namespace romit {

/// Largest register for which a full 2^n x 2^n scan is allowed.
inline constexpr unsigned kMaxFullScanWidth = 4;

/// Column j is the outcome distribution for basis preparation j, so
/// m(i, j) = p(i | j).
struct ConfusionMatrix {
    unsigned n = 1;
    Eigen::MatrixXd m;

    /// Throws ValidationError unless entries lie in [0, 1] and columns sum
    /// to 1 within `tol`.
    void validate(double tol = 1e-9) const;

    /// M(i, j) = p_{i xor j}: the response of a stochastic bit-flip channel.
    static ConfusionMatrix from_xor_channel(const SignedDist &p);
    /// Column j = normalized counts[j].
    static ConfusionMatrix from_counts(unsigned n, const std::vector<Counts> &columns);
};

/// Per-qubit 2x2 column-stochastic matrices; the full response is their
/// Kronecker product with qubit 0 as the least significant factor.
struct LocalConfusionSet {
    unsigned n = 1;
    std::vector<Eigen::Matrix2d> mats;

    static LocalConfusionSet identity(unsigned n);
    ConfusionMatrix kronecker() const;
};

/// M * d over the dense register.
SignedDist apply(const ConfusionMatrix &m, const SignedDist &d);

/// Prepares every basis state and measures it `shots` times through `model`.
/// Preparation j uses seed derive_seed(seed, j).
ConfusionMatrix build_full_confusion(
    const MeasurementModel &model, unsigned n, uint64_t shots, uint64_t seed, unsigned threads = 1);

/// Simultaneous-ground scan: |0...0> once, then |0..1_i..0> for each qubit
/// with every other qubit left in the ground state. Reads the marginal of
/// the excited qubit only, so correlated errors driven by other qubits are
/// invisible by design.
LocalConfusionSet build_local_confusions(
    const MeasurementModel &model, unsigned n, uint64_t shots, uint64_t seed, unsigned threads = 1);

/// M^-1 * noisy via LU. Throws SingularMatrixError when the 2-norm condition
/// number exceeds `max_condition`.
SignedDist correct_full(const ConfusionMatrix &m, const SignedDist &noisy, double max_condition = 1e12);

/// Same inversion in exact rational arithmetic (the double entries of m are
/// taken as exact binary fractions).
RationalDist correct_full_exact(const ConfusionMatrix &m, const RationalDist &noisy);

/// Applies the tensor product of per-qubit inverses one qubit at a time over
/// the sparse support. Throws SingularMatrixError naming the first qubit
/// whose matrix has |det| < 1e-12.
SignedDist correct_local(const LocalConfusionSet &set, const SignedDist &noisy, const AlgebraOptions &opts = {});

double condition_number(const ConfusionMatrix &m);

struct ConfusionDiagnostics {
    double diag_spread = 0;       // max - min of the diagonal
    double asymmetry = 0;         // max |M_ij - M_ji|
    double xor_fit_residual = 0;  // min over p of max |M_ij - p_{i xor j}|
    SignedDist xor_fit;           // the minimizing p (Chebyshev centre per shift)
};

ConfusionDiagnostics diagnostics(const ConfusionMatrix &m);

/// CSV with a header row of preparation labels (MSB-left bit strings) and
/// one row per outcome. Metadata lines come first as "# key: value".
std::string write_confusion_csv(const ConfusionMatrix &m, const Metadata &header = {});
std::string write_diagnostics_json(const ConfusionDiagnostics &d, const Metadata &header = {});

}  // namespace romit

#endif
