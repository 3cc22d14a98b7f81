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

#include "romit/confusion.h"

#include <cmath>
#include <sstream>

#include "json.hpp"
#include "romit/circuit.h"
#include "romit/errors.h"
#include "romit/parallel.h"

namespace romit {

namespace {

void require_model_width(const MeasurementModel &model, unsigned n) {
    if (model.arity() != n) {
        throw ValidationError("measurement model acts on " + std::to_string(model.arity()) +
                              " qubits but the register has " + std::to_string(n));
    }
}

void require_full_scan_width(unsigned n) {
    if (n < 1 || n > kMaxFullScanWidth) {
        throw ValidationError("full confusion scans are limited to 1..4 qubits (got " + std::to_string(n) +
                              "); use local scans or characterize the twirled error distribution instead");
    }
}

Counts measure_basis_state(const MeasurementModel &model, unsigned n, uint64_t prep, uint64_t shots, uint64_t seed) {
    Circuit c(n, n);
    for (unsigned q = 0; q < n; q++) {
        if ((prep >> q) & 1) {
            c.gate("x", {q});
        }
    }
    return run_circuit(with_terminal_measurement(c, model), shots, seed).counts;
}

Eigen::VectorXd dense(const SignedDist &d) {
    Eigen::VectorXd v = Eigen::VectorXd::Zero(Eigen::Index{1} << d.width());
    for (const auto &e : d.entries()) {
        v(static_cast<Eigen::Index>(e.mask)) = e.weight;
    }
    return v;
}

SignedDist sparse(const Eigen::VectorXd &v, unsigned n) {
    std::vector<SignedDist::Entry> entries;
    for (Eigen::Index i = 0; i < v.size(); i++) {
        if (v(i) != 0.0) {
            entries.push_back({static_cast<uint64_t>(i), v(i)});
        }
    }
    return SignedDist(n, std::move(entries));
}

void require_matrix_width(const ConfusionMatrix &m, unsigned n) {
    if (m.m.rows() != (Eigen::Index{1} << m.n) || m.m.cols() != m.m.rows()) {
        throw ValidationError("confusion matrix shape does not match its width");
    }
    if (m.n != n) {
        throw ValidationError("confusion matrix width " + std::to_string(m.n) + " does not match distribution width " +
                              std::to_string(n));
    }
}

}  // namespace

void ConfusionMatrix::validate(double tol) const {
    if (m.rows() != (Eigen::Index{1} << n) || m.cols() != m.rows()) {
        throw ValidationError("confusion matrix must be 2^n x 2^n");
    }
    for (Eigen::Index j = 0; j < m.cols(); j++) {
        for (Eigen::Index i = 0; i < m.rows(); i++) {
            if (!(m(i, j) >= -tol && m(i, j) <= 1 + tol)) {
                throw ValidationError("confusion matrix entry (" + std::to_string(i) + ", " + std::to_string(j) +
                                      ") is outside [0, 1]");
            }
        }
        if (std::abs(m.col(j).sum() - 1.0) > tol) {
            throw ValidationError("confusion matrix column " + std::to_string(j) + " does not sum to 1");
        }
    }
}

ConfusionMatrix ConfusionMatrix::from_xor_channel(const SignedDist &p) {
    if (p.width() > 12) {
        throw ValidationError("dense confusion matrices are limited to 12 qubits");
    }
    const Eigen::Index dim = Eigen::Index{1} << p.width();
    ConfusionMatrix out{p.width(), Eigen::MatrixXd::Zero(dim, dim)};
    for (Eigen::Index j = 0; j < dim; j++) {
        for (const auto &e : p.entries()) {
            out.m(static_cast<Eigen::Index>(e.mask ^ static_cast<uint64_t>(j)), j) += e.weight;
        }
    }
    return out;
}

ConfusionMatrix ConfusionMatrix::from_counts(unsigned n, const std::vector<Counts> &columns) {
    const Eigen::Index dim = Eigen::Index{1} << n;
    if (static_cast<Eigen::Index>(columns.size()) != dim) {
        throw ValidationError("need one histogram per basis preparation");
    }
    ConfusionMatrix out{n, Eigen::MatrixXd::Zero(dim, dim)};
    for (Eigen::Index j = 0; j < dim; j++) {
        const double total = static_cast<double>(total_shots(columns[j]));
        if (total == 0) {
            throw ValidationError("preparation " + std::to_string(j) + " has no counts");
        }
        for (const auto &[outcome, c] : columns[j]) {
            out.m(static_cast<Eigen::Index>(outcome), j) = static_cast<double>(c) / total;
        }
    }
    return out;
}

LocalConfusionSet LocalConfusionSet::identity(unsigned n) {
    return {n, std::vector<Eigen::Matrix2d>(n, Eigen::Matrix2d::Identity())};
}

ConfusionMatrix LocalConfusionSet::kronecker() const {
    require_full_scan_width(n);
    Eigen::MatrixXd acc = Eigen::MatrixXd::Identity(1, 1);
    for (unsigned q = 0; q < n; q++) {
        // Qubit q is bit q, so later qubits are the more significant factor.
        const Eigen::MatrixXd &mq = mats[q];
        Eigen::MatrixXd next(acc.rows() * 2, acc.cols() * 2);
        for (int a = 0; a < 2; a++) {
            for (int b = 0; b < 2; b++) {
                next.block(a * acc.rows(), b * acc.cols(), acc.rows(), acc.cols()) = mq(a, b) * acc;
            }
        }
        acc = std::move(next);
    }
    return {n, std::move(acc)};
}

SignedDist apply(const ConfusionMatrix &m, const SignedDist &d) {
    require_matrix_width(m, d.width());
    return sparse(m.m * dense(d), d.width());
}

ConfusionMatrix build_full_confusion(
    const MeasurementModel &model, unsigned n, uint64_t shots, uint64_t seed, unsigned threads) {
    require_full_scan_width(n);
    require_model_width(model, n);
    std::vector<Counts> columns(std::size_t{1} << n);
    parallel_for(columns.size(), threads, [&](std::size_t j) {
        columns[j] = measure_basis_state(model, n, j, shots, derive_seed(seed, j));
    });
    return ConfusionMatrix::from_counts(n, columns);
}

LocalConfusionSet build_local_confusions(
    const MeasurementModel &model, unsigned n, uint64_t shots, uint64_t seed, unsigned threads) {
    require_model_width(model, n);
    if (shots == 0) {
        throw ValidationError("local confusion scan needs at least one shot");
    }
    // Task 0 is the all-ground preparation; task q + 1 excites qubit q.
    std::vector<Counts> runs(n + 1);
    parallel_for(runs.size(), threads, [&](std::size_t t) {
        const uint64_t prep = t == 0 ? 0 : uint64_t{1} << (t - 1);
        runs[t] = measure_basis_state(model, n, prep, shots, derive_seed(seed, t));
    });
    LocalConfusionSet out{n, {}};
    for (unsigned q = 0; q < n; q++) {
        Eigen::Matrix2d mq = Eigen::Matrix2d::Zero();
        for (int col = 0; col < 2; col++) {
            const Counts &c = runs[col == 0 ? 0 : q + 1];
            for (const auto &[outcome, k] : c) {
                mq((outcome >> q) & 1, col) += static_cast<double>(k);
            }
            mq.col(col) /= static_cast<double>(shots);
        }
        out.mats.push_back(mq);
    }
    return out;
}

double condition_number(const ConfusionMatrix &m) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(m.m);
    const auto &s = svd.singularValues();
    const double smin = s(s.size() - 1);
    return smin == 0 ? std::numeric_limits<double>::infinity() : s(0) / smin;
}

SignedDist correct_full(const ConfusionMatrix &m, const SignedDist &noisy, double max_condition) {
    require_matrix_width(m, noisy.width());
    const double cond = condition_number(m);
    if (!(cond <= max_condition)) {
        throw SingularMatrixError(
            "confusion matrix is singular or ill-conditioned (condition number " + format_double(cond) + ")", cond);
    }
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(m.m);
    return sparse(lu.solve(dense(noisy)), noisy.width());
}

RationalDist correct_full_exact(const ConfusionMatrix &m, const RationalDist &noisy) {
    require_matrix_width(m, noisy.width());
    const std::size_t dim = std::size_t{1} << m.n;
    // Augmented Gauss-Jordan elimination over the rationals.
    std::vector<std::vector<Rational>> a(dim, std::vector<Rational>(dim + 1));
    for (std::size_t i = 0; i < dim; i++) {
        for (std::size_t j = 0; j < dim; j++) {
            a[i][j] = Rational(m.m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)));
        }
        a[i][dim] = noisy.weight(i);
    }
    for (std::size_t col = 0; col < dim; col++) {
        std::size_t pivot = col;
        while (pivot < dim && a[pivot][col] == 0) {
            pivot++;
        }
        if (pivot == dim) {
            throw SingularMatrixError("confusion matrix is exactly singular", std::numeric_limits<double>::infinity());
        }
        std::swap(a[col], a[pivot]);
        const Rational inv = Rational(1) / a[col][col];
        for (std::size_t j = col; j <= dim; j++) {
            a[col][j] *= inv;
        }
        for (std::size_t i = 0; i < dim; i++) {
            if (i == col || a[i][col] == 0) {
                continue;
            }
            const Rational f = a[i][col];
            for (std::size_t j = col; j <= dim; j++) {
                a[i][j] -= f * a[col][j];
            }
        }
    }
    std::vector<RationalDist::Entry> entries;
    for (std::size_t i = 0; i < dim; i++) {
        entries.push_back({i, a[i][dim]});
    }
    return RationalDist(m.n, std::move(entries));
}

SignedDist correct_local(const LocalConfusionSet &set, const SignedDist &noisy, const AlgebraOptions &opts) {
    if (set.n != noisy.width() || set.mats.size() != set.n) {
        throw ValidationError("local confusion set width does not match the distribution");
    }
    SignedDist cur = noisy;
    for (unsigned q = 0; q < set.n; q++) {
        const Eigen::Matrix2d &mq = set.mats[q];
        if (std::abs(mq.determinant()) < 1e-12) {
            throw SingularMatrixError("local confusion matrix of qubit " + std::to_string(q) + " is singular",
                                      std::numeric_limits<double>::infinity());
        }
        const Eigen::Matrix2d inv = mq.inverse();
        const uint64_t bit = uint64_t{1} << q;
        detail::SparseAccumulator<double> acc(set.n, opts);
        for (const auto &e : cur.entries()) {
            const int b = (e.mask & bit) ? 1 : 0;
            acc.add(e.mask & ~bit, inv(0, b) * e.weight);
            acc.add(e.mask | bit, inv(1, b) * e.weight);
        }
        cur = std::move(acc).finish();
    }
    return cur;
}

ConfusionDiagnostics diagnostics(const ConfusionMatrix &m) {
    const Eigen::Index dim = m.m.rows();
    ConfusionDiagnostics d;
    d.diag_spread = m.m.diagonal().maxCoeff() - m.m.diagonal().minCoeff();
    d.asymmetry = (m.m - m.m.transpose()).cwiseAbs().maxCoeff();
    // Each shift s is fitted independently: the best constant for the
    // entries {M(i xor s, i)} in max norm is the midpoint of their range.
    std::vector<SignedDist::Entry> fit;
    for (Eigen::Index s = 0; s < dim; s++) {
        double lo = std::numeric_limits<double>::infinity();
        double hi = -lo;
        for (Eigen::Index j = 0; j < dim; j++) {
            const double v = m.m(j ^ s, j);
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
        d.xor_fit_residual = std::max(d.xor_fit_residual, (hi - lo) / 2);
        fit.push_back({static_cast<uint64_t>(s), (hi + lo) / 2});
    }
    d.xor_fit = SignedDist(m.n, std::move(fit));
    return d;
}

std::string write_confusion_csv(const ConfusionMatrix &m, const Metadata &header) {
    std::ostringstream out;
    for (const auto &[k, v] : header) {
        out << "# " << k << ": " << v << "\n";
    }
    out << "outcome";
    const Eigen::Index dim = m.m.rows();
    for (Eigen::Index j = 0; j < dim; j++) {
        out << ",prep_" << bits_to_string(static_cast<uint64_t>(j), m.n);
    }
    out << "\n";
    for (Eigen::Index i = 0; i < dim; i++) {
        out << bits_to_string(static_cast<uint64_t>(i), m.n);
        for (Eigen::Index j = 0; j < dim; j++) {
            out << "," << format_double(m.m(i, j));
        }
        out << "\n";
    }
    return out.str();
}

std::string write_diagnostics_json(const ConfusionDiagnostics &d, const Metadata &header) {
    nlohmann::ordered_json j;
    j["diag_spread"] = d.diag_spread;
    j["asymmetry"] = d.asymmetry;
    j["xor_fit_residual"] = d.xor_fit_residual;
    auto fit = nlohmann::ordered_json::object();
    for (const auto &e : d.xor_fit.entries()) {
        fit[bits_to_string(e.mask, d.xor_fit.width())] = e.weight;
    }
    j["xor_fit"] = std::move(fit);
    if (!header.empty()) {
        auto meta = nlohmann::ordered_json::object();
        for (const auto &[k, v] : header) {
            meta[k] = v;
        }
        j["metadata"] = std::move(meta);
    }
    return j.dump(2) + "\n";
}

}  // namespace romit
