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

#include "romit/mrc.h"

#include <cctype>

#include "romit/errors.h"
#include "romit/parallel.h"

namespace romit {

namespace {

void require_plain_prep(const Circuit &prep, const MeasurementModel &model) {
    for (const auto &node : prep.nodes()) {
        if (std::holds_alternative<MeasureOp>(node) || std::holds_alternative<TwirlOp>(node)) {
            throw ValidationError("preparation circuit must end before its first measurement");
        }
    }
    if (model.arity() != prep.num_qubits()) {
        throw ValidationError("measurement model acts on " + std::to_string(model.arity()) +
                              " qubits but the preparation has " + std::to_string(prep.num_qubits()));
    }
}

Circuit basis_prep(unsigned n, uint64_t basis) {
    Circuit c(n, n);
    for (unsigned q = 0; q < n; q++) {
        if ((basis >> q) & 1) {
            c.gate("x", {q});
        }
    }
    return c;
}

}  // namespace

uint64_t PauliString::flip_mask() const {
    uint64_t m = 0;
    for (std::size_t i = 0; i < ops.size(); i++) {
        if (ops[i] == Pauli::X || ops[i] == Pauli::Y) {
            m |= uint64_t{1} << i;
        }
    }
    return m;
}

std::string PauliString::str() const {
    std::string s;
    for (Pauli p : ops) {
        s += pauli_char(p);
    }
    return s;
}

PauliString PauliString::parse(std::string_view text) {
    PauliString out;
    for (char c : text) {
        if (c == ' ' || c == '*') {
            continue;
        }
        out.ops.push_back(pauli_from_char(static_cast<char>(std::toupper(static_cast<unsigned char>(c)))));
    }
    if (out.ops.empty() || out.ops.size() > kMaxWidth) {
        throw ValidationError("Pauli string must have 1..63 factors");
    }
    return out;
}

PauliString sample_pauli(unsigned n, Rng &rng) {
    if (n < 1) {
        throw ValidationError("sample_pauli needs at least one qubit");
    }
    PauliString out;
    out.ops.reserve(n);
    std::uniform_int_distribution<int> pick(0, 3);
    for (unsigned i = 0; i < n; i++) {
        out.ops.push_back(static_cast<Pauli>(pick(rng)));
    }
    return out;
}

void TwirlConfig::validate() const {
    if (randomizations < 1) {
        throw ValidationError("twirl needs at least one randomization");
    }
    if (shots_per_randomization < 1) {
        throw ValidationError("twirl needs at least one shot per randomization");
    }
}

TwirlConfig TwirlConfig::from_total(uint64_t total, unsigned randomizations, uint64_t seed) {
    if (randomizations < 1) {
        throw ValidationError("twirl needs at least one randomization");
    }
    TwirlConfig cfg;
    cfg.randomizations = randomizations;
    cfg.shots_per_randomization = total / randomizations;
    cfg.seed = seed;
    cfg.validate();
    return cfg;
}

Counts measure_with_pauli(
    const Circuit &prep, const MeasurementModel &model, const PauliString &pauli, uint64_t shots, uint64_t seed) {
    require_plain_prep(prep, model);
    if (pauli.size() != prep.num_qubits()) {
        throw ValidationError("Pauli string width does not match the register");
    }
    Circuit c = prep;
    for (unsigned q = 0; q < pauli.size(); q++) {
        if (pauli.ops[q] != Pauli::I) {
            c.gate(std::string(1, static_cast<char>(std::tolower(pauli_char(pauli.ops[q])))),
                   gates::pauli(pauli.ops[q]), {q});
        }
    }
    const uint64_t flip = pauli.flip_mask();
    Counts out;
    for (const auto &[x, k] : run_circuit(with_terminal_measurement(c, model), shots, seed).counts) {
        out[x ^ flip] += k;
    }
    return out;
}

Counts plain_measure(const Circuit &prep, const MeasurementModel &model, uint64_t shots, uint64_t seed) {
    require_plain_prep(prep, model);
    return run_circuit(with_terminal_measurement(prep, model), shots, seed).counts;
}

Counts twirled_measure(const Circuit &prep, const MeasurementModel &model, const TwirlConfig &cfg) {
    cfg.validate();
    require_plain_prep(prep, model);
    std::vector<Counts> parts(cfg.randomizations);
    parallel_for(parts.size(), cfg.threads, [&](std::size_t k) {
        Rng rng = make_rng(cfg.seed, k);
        const PauliString p = sample_pauli(prep.num_qubits(), rng);
        parts[k] = measure_with_pauli(prep, model, p, cfg.shots_per_randomization, rng());
    });
    Counts merged;
    for (const auto &part : parts) {
        for (const auto &[x, k] : part) {
            merged[x] += k;
        }
    }
    return merged;
}

SignedDist characterize_error_distribution(
    const MeasurementModel &model, unsigned n, const TwirlConfig &cfg, uint64_t basis) {
    check_width(n);
    if (basis > low_mask(n)) {
        throw ValidationError("characterization basis state does not fit in the register");
    }
    const Counts raw = twirled_measure(basis_prep(n, basis), model, cfg);
    if (total_shots(raw) == 0) {
        throw ValidationError("characterization produced no counts");
    }
    Counts flips;
    for (const auto &[x, k] : raw) {
        flips[x ^ basis] += k;
    }
    return from_counts(n, flips);
}

ConfusionMatrix twirled_confusion(const MeasurementModel &model, unsigned n, const TwirlConfig &cfg) {
    if (n < 1 || n > kMaxFullScanWidth) {
        throw ValidationError("twirled confusion scans are limited to 1..4 qubits (got " + std::to_string(n) +
                              "); use characterize_error_distribution for larger registers");
    }
    cfg.validate();
    std::vector<Counts> columns(std::size_t{1} << n);
    for (std::size_t j = 0; j < columns.size(); j++) {
        TwirlConfig sub = cfg;
        sub.seed = derive_seed(cfg.seed, j);
        columns[j] = twirled_measure(basis_prep(n, j), model, sub);
    }
    return ConfusionMatrix::from_counts(n, columns);
}

}  // namespace romit
