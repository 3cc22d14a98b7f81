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

#include "romit/gates.h"

#include <cmath>
#include <string>

#include "romit/errors.h"

namespace romit {

namespace {

constexpr Complex kI{0.0, 1.0};

CMatrix mat2(Complex a, Complex b, Complex c, Complex d) {
    CMatrix m(2, 2);
    m << a, b, c, d;
    return m;
}

}  // namespace

char pauli_char(Pauli p) {
    return "IXYZ"[static_cast<int>(p)];
}

Pauli pauli_from_char(char c) {
    switch (c) {
        case 'I':
            return Pauli::I;
        case 'X':
            return Pauli::X;
        case 'Y':
            return Pauli::Y;
        case 'Z':
            return Pauli::Z;
        default:
            throw ValidationError(std::string("not a Pauli label: '") + c + "'");
    }
}

namespace gates {

CMatrix identity(unsigned qubits) {
    const Eigen::Index d = Eigen::Index{1} << qubits;
    return CMatrix::Identity(d, d);
}

CMatrix x() {
    return mat2(0, 1, 1, 0);
}

CMatrix y() {
    return mat2(0, -kI, kI, 0);
}

CMatrix z() {
    return mat2(1, 0, 0, -1);
}

CMatrix h() {
    const double r = 1 / std::sqrt(2.0);
    return mat2(r, r, r, -r);
}

CMatrix s() {
    return mat2(1, 0, 0, kI);
}

CMatrix sdg() {
    return mat2(1, 0, 0, -kI);
}

CMatrix rx(double theta) {
    const double c = std::cos(theta / 2);
    const double sn = std::sin(theta / 2);
    return mat2(c, -kI * sn, -kI * sn, c);
}

CMatrix ry(double theta) {
    const double c = std::cos(theta / 2);
    const double sn = std::sin(theta / 2);
    return mat2(c, -sn, sn, c);
}

CMatrix rz(double theta) {
    return mat2(std::exp(-kI * (theta / 2)), 0, 0, std::exp(kI * (theta / 2)));
}

CMatrix pauli(Pauli p) {
    switch (p) {
        case Pauli::I:
            return identity();
        case Pauli::X:
            return x();
        case Pauli::Y:
            return y();
        case Pauli::Z:
            return z();
    }
    return identity();
}

CMatrix cnot() {
    // Control is local bit 0, so |c=1,t=0> (index 1) <-> |c=1,t=1> (index 3).
    CMatrix m = CMatrix::Zero(4, 4);
    m(0, 0) = 1;
    m(2, 2) = 1;
    m(3, 1) = 1;
    m(1, 3) = 1;
    return m;
}

CMatrix cz() {
    CMatrix m = CMatrix::Identity(4, 4);
    m(3, 3) = -1;
    return m;
}

CMatrix haar_su2(Rng &rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    double q[4];
    double norm = 0;
    do {
        norm = 0;
        for (double &v : q) {
            v = normal(rng);
            norm += v * v;
        }
    } while (norm < 1e-300);
    norm = std::sqrt(norm);
    const Complex alpha(q[0] / norm, q[1] / norm);
    const Complex beta(q[2] / norm, q[3] / norm);
    return mat2(alpha, -std::conj(beta), beta, std::conj(alpha));
}

unsigned arity(std::string_view name) {
    if (name == "cx" || name == "cnot" || name == "cz") {
        return 2;
    }
    static constexpr std::string_view single[] = {"i", "x", "y", "z", "h", "s", "sdg", "rx", "ry", "rz", "u"};
    for (auto s : single) {
        if (s == name) {
            return 1;
        }
    }
    throw ValidationError("unknown gate '" + std::string(name) + "'");
}

CMatrix by_name(std::string_view name, std::span<const double> params) {
    auto need = [&](std::size_t count) {
        if (params.size() != count) {
            throw ValidationError(
                "gate '" + std::string(name) + "' takes " + std::to_string(count) + " parameter(s), got " +
                std::to_string(params.size()));
        }
    };
    if (name == "rx" || name == "ry" || name == "rz") {
        need(1);
        return name == "rx" ? rx(params[0]) : name == "ry" ? ry(params[0]) : rz(params[0]);
    }
    if (name == "u") {
        need(3);
        return rz(params[0]) * ry(params[1]) * rz(params[2]);
    }
    need(0);
    if (name == "i") return identity();
    if (name == "x") return x();
    if (name == "y") return y();
    if (name == "z") return z();
    if (name == "h") return h();
    if (name == "s") return s();
    if (name == "sdg") return sdg();
    if (name == "cx" || name == "cnot") return cnot();
    if (name == "cz") return cz();
    throw ValidationError("unknown gate '" + std::string(name) + "'");
}

}  // namespace gates

bool is_unitary(const CMatrix &m, double tol) {
    if (m.rows() != m.cols()) {
        return false;
    }
    return ((m.adjoint() * m) - CMatrix::Identity(m.rows(), m.cols())).cwiseAbs().maxCoeff() <= tol;
}

}  // namespace romit
