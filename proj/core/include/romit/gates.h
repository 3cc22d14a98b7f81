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

#ifndef ROMIT_GATES_H
#define ROMIT_GATES_H

#include <complex>
#include <cstdint>
#include <span>
#include <string_view>

#include <Eigen/Dense>

#include "romit/rng.h"

namespace romit {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;

enum class Pauli : uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

char pauli_char(Pauli p);
Pauli pauli_from_char(char c);

// Multi-qubit gate matrices use local index bit i <-> targets[i]. For the
// two-qubit gates targets[0] is the control.
namespace gates {

CMatrix identity(unsigned qubits = 1);
CMatrix x();
CMatrix y();
CMatrix z();
CMatrix h();
CMatrix s();
CMatrix sdg();
CMatrix rx(double theta);
CMatrix ry(double theta);
CMatrix rz(double theta);
CMatrix pauli(Pauli p);
CMatrix cnot();
CMatrix cz();

/// Haar-random element of SU(2): a uniform point on the unit 3-sphere read
/// as a quaternion.
CMatrix haar_su2(Rng &rng);

/// Lookup used by the JSON circuit reader. Known names: i, x, y, z, h, s,
/// sdg, rx, ry, rz (one angle each), u (three ZYZ Euler angles), cx/cnot, cz.
CMatrix by_name(std::string_view name, std::span<const double> params);

/// Number of qubits a named gate acts on; throws for unknown names.
unsigned arity(std::string_view name);

}  // namespace gates

bool is_unitary(const CMatrix &m, double tol = 1e-10);

}  // namespace romit

#endif
