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

#include "romit/state.h"

#include <string>

#include <Eigen/Eigenvalues>

#include "romit/errors.h"

namespace romit {

namespace {

uint64_t target_mask(std::span<const unsigned> targets) {
    uint64_t m = 0;
    for (unsigned t : targets) {
        m |= uint64_t{1} << t;
    }
    return m;
}

std::vector<std::size_t> subspace_offsets(std::span<const unsigned> targets) {
    std::vector<std::size_t> offs(std::size_t{1} << targets.size());
    for (std::size_t s = 0; s < offs.size(); s++) {
        std::size_t o = 0;
        for (std::size_t i = 0; i < targets.size(); i++) {
            o |= ((s >> i) & 1) << targets[i];
        }
        offs[s] = o;
    }
    return offs;
}

// m <- op * m, with op acting on the listed qubits of the row index.
void apply_left(CMatrix &m, const CMatrix &op, std::span<const unsigned> targets) {
    const auto dim = static_cast<std::size_t>(m.rows());
    const uint64_t tmask = target_mask(targets);
    const auto offs = subspace_offsets(targets);
    const std::size_t sub = offs.size();
    std::vector<Complex> buf(sub);
    for (std::size_t col = 0; col < dim; col++) {
        Complex *c = m.col(static_cast<Eigen::Index>(col)).data();
        for (std::size_t base = 0; base < dim; base++) {
            if (base & tmask) {
                continue;
            }
            for (std::size_t s = 0; s < sub; s++) {
                buf[s] = c[base | offs[s]];
            }
            for (std::size_t r = 0; r < sub; r++) {
                Complex acc = 0;
                for (std::size_t s = 0; s < sub; s++) {
                    acc += op(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(s)) * buf[s];
                }
                c[base | offs[r]] = acc;
            }
        }
    }
}

// K m K^dagger, computed as (K (K m)^dagger)^dagger.
CMatrix sandwich(const CMatrix &m, const CMatrix &op, std::span<const unsigned> targets) {
    CMatrix a = m;
    apply_left(a, op, targets);
    CMatrix b = a.adjoint();
    apply_left(b, op, targets);
    return b.adjoint();
}

}  // namespace

QuantumState::QuantumState(unsigned n) : n_(n) {
    if (n < 1 || n > kMaxSimQubits) {
        throw ValidationError("simulator supports 1 to 10 qubits, got " + std::to_string(n));
    }
    const Eigen::Index d = Eigen::Index{1} << n;
    rho_ = CMatrix::Zero(d, d);
    rho_(0, 0) = 1;
}

QuantumState QuantumState::basis(unsigned n, uint64_t mask) {
    QuantumState s(n);
    if (mask >> n) {
        throw ValidationError("basis state does not fit in the register");
    }
    s.rho_(0, 0) = 0;
    s.rho_(static_cast<Eigen::Index>(mask), static_cast<Eigen::Index>(mask)) = 1;
    return s;
}

QuantumState QuantumState::from_density_matrix(CMatrix rho, double tol) {
    if (rho.rows() != rho.cols() || rho.rows() < 2 || (rho.rows() & (rho.rows() - 1)) != 0) {
        throw ValidationError("density matrix must be square with a power-of-two dimension");
    }
    unsigned n = 0;
    while ((Eigen::Index{1} << n) < rho.rows()) {
        n++;
    }
    QuantumState s(n);
    s.rho_ = std::move(rho);
    try {
        s.check_invariants(tol);
    } catch (const NumericalError &e) {
        throw ValidationError(e.what());
    }
    return s;
}

std::vector<double> QuantumState::probabilities() const {
    std::vector<double> p(static_cast<std::size_t>(rho_.rows()));
    for (std::size_t i = 0; i < p.size(); i++) {
        p[i] = std::max(0.0, rho_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)).real());
    }
    return p;
}

std::vector<double> QuantumState::outcome_probabilities(std::span<const unsigned> targets) const {
    check_targets(targets);
    std::vector<double> out(std::size_t{1} << targets.size(), 0.0);
    const auto full = probabilities();
    for (std::size_t x = 0; x < full.size(); x++) {
        std::size_t local = 0;
        for (std::size_t i = 0; i < targets.size(); i++) {
            local |= ((x >> targets[i]) & 1) << i;
        }
        out[local] += full[x];
    }
    return out;
}

void QuantumState::check_targets(std::span<const unsigned> targets) const {
    uint64_t seen = 0;
    for (unsigned t : targets) {
        if (t >= n_) {
            throw ValidationError("qubit " + std::to_string(t) + " is outside a " + std::to_string(n_) + "-qubit state");
        }
        if ((seen >> t) & 1) {
            throw ValidationError("qubit " + std::to_string(t) + " targeted twice");
        }
        seen |= uint64_t{1} << t;
    }
}

void QuantumState::apply_unitary(const CMatrix &u, std::span<const unsigned> targets) {
    check_targets(targets);
    if (targets.empty() || targets.size() > 2) {
        throw ValidationError("gates act on one or two qubits");
    }
    if (u.rows() != (Eigen::Index{1} << targets.size()) || !is_unitary(u)) {
        throw ValidationError("gate matrix is not unitary on " + std::to_string(targets.size()) + " qubit(s)");
    }
    rho_ = sandwich(rho_, u, targets);
}

void QuantumState::apply_kraus(std::span<const CMatrix> ops, std::span<const unsigned> targets) {
    check_targets(targets);
    if (ops.empty()) {
        return;
    }
    for (const auto &k : ops) {
        if (k.rows() != (Eigen::Index{1} << targets.size()) || k.cols() != k.rows()) {
            throw ValidationError("Kraus operator dimension does not match its target count");
        }
    }
    if (ops.size() == 1) {
        rho_ = sandwich(rho_, ops[0], targets);
        return;
    }
    CMatrix acc = sandwich(rho_, ops[0], targets);
    for (std::size_t i = 1; i < ops.size(); i++) {
        acc += sandwich(rho_, ops[i], targets);
    }
    rho_ = std::move(acc);
}

void QuantumState::project(std::span<const unsigned> targets, uint64_t outcome) {
    check_targets(targets);
    const auto dim = static_cast<std::size_t>(rho_.rows());
    std::vector<bool> keep(dim);
    double prob = 0;
    for (std::size_t x = 0; x < dim; x++) {
        std::size_t local = 0;
        for (std::size_t i = 0; i < targets.size(); i++) {
            local |= ((x >> targets[i]) & 1) << i;
        }
        keep[x] = local == outcome;
        if (keep[x]) {
            prob += rho_(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(x)).real();
        }
    }
    if (prob < 1e-12) {
        throw NumericalError("projection onto a branch with probability " + std::to_string(prob));
    }
    for (std::size_t c = 0; c < dim; c++) {
        for (std::size_t r = 0; r < dim; r++) {
            auto &v = rho_(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
            v = (keep[r] && keep[c]) ? v / prob : Complex(0);
        }
    }
}

void QuantumState::reset(std::span<const unsigned> targets) {
    check_targets(targets);
    CMatrix k0 = CMatrix::Zero(2, 2);
    CMatrix k1 = CMatrix::Zero(2, 2);
    k0(0, 0) = 1;
    k1(0, 1) = 1;
    const CMatrix ops[] = {k0, k1};
    for (unsigned t : targets) {
        const unsigned single[] = {t};
        apply_kraus(ops, single);
    }
}

void QuantumState::check_invariants(double tol) const {
    const double herm = (rho_ - rho_.adjoint()).cwiseAbs().maxCoeff();
    if (herm > tol) {
        throw NumericalError("density matrix is not Hermitian (deviation " + std::to_string(herm) + ")");
    }
    const double tr = rho_.trace().real();
    if (std::abs(tr - 1.0) > tol) {
        throw NumericalError("density matrix trace is " + std::to_string(tr));
    }
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(rho_, Eigen::EigenvaluesOnly);
    const double min_eig = solver.eigenvalues().minCoeff();
    if (min_eig < -1e-9) {
        throw NumericalError("density matrix has negative eigenvalue " + std::to_string(min_eig));
    }
}

QuantumState apply_unitary(QuantumState state, const CMatrix &gate, std::span<const unsigned> targets) {
    state.apply_unitary(gate, targets);
    return state;
}

}  // namespace romit
