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

#include "romit/mcm.h"

#include <bit>
#include <cmath>
#include <map>

#include "romit/dist_io.h"
#include "romit/errors.h"
#include "romit/parallel.h"

namespace romit {

std::string to_string(ProtectionMode mode) {
    switch (mode) {
        case ProtectionMode::kBare:
            return "bare";
        case ProtectionMode::kMrc:
            return "mrc";
        case ProtectionMode::kMrcQprc:
            return "mrc+qprc";
    }
    return "?";
}

ProtectionMode parse_protection_mode(std::string_view text) {
    if (text == "bare") {
        return ProtectionMode::kBare;
    }
    if (text == "mrc") {
        return ProtectionMode::kMrc;
    }
    if (text == "mrc+qprc") {
        return ProtectionMode::kMrcQprc;
    }
    throw ValidationError("unknown protection mode '" + std::string(text) + "' (expected bare, mrc, mrc+qprc)");
}

void McmNoise::validate() const {
    if (ancilla_readout.arity() != 1 || memory_readout.arity() != 1 || memory_idle.arity() != 1) {
        throw ValidationError("bit-flip protection noise models act on a single qubit each");
    }
}

Circuit build_protection_circuit(
    unsigned rounds, ProtectionMode mode, const McmNoise &noise, const ProtectionVariant &variant) {
    if (rounds < 1 || rounds > kMaxProtectionRounds) {
        throw ValidationError("protection rounds must be in [1, 31], got " + std::to_string(rounds));
    }
    noise.validate();
    if (variant.xp_rounds >> rounds) {
        throw ValidationError("X_p variant names a round beyond " + std::to_string(rounds));
    }
    const bool fixed = !variant.fixed_paulis.empty();
    if (fixed && mode == ProtectionMode::kBare) {
        throw ValidationError("bare protection inserts no Pauli; fixed Paulis need an MRC mode");
    }
    if (fixed && variant.fixed_paulis.size() != rounds) {
        throw ValidationError("need one fixed Pauli per round");
    }

    Circuit c(2, 2 * rounds + 1);
    c.gate("x", {kMemoryQubit});
    for (unsigned r = 0; r < rounds; r++) {
        const unsigned raw = 2 * r;
        const unsigned flip = 2 * r + 1;
        c.gate("cx", {kMemoryQubit, kAncillaQubit});
        Condition cond{{raw}, false};
        if (mode != ProtectionMode::kBare) {
            if (fixed) {
                const Pauli p = variant.fixed_paulis[r];
                if (p != Pauli::I) {
                    c.gate(std::string(1, pauli_char(p)), gates::pauli(p), {kAncillaQubit});
                }
                cond.parity = p == Pauli::X || p == Pauli::Y;
            } else {
                c.twirl({kAncillaQubit}, {flip});
                cond.slots.push_back(flip);
            }
        }
        if ((variant.xp_rounds >> r) & 1) {
            c.gate("x", {kAncillaQubit});
        }
        c.measure({kAncillaQubit}, {raw}, noise.ancilla_readout);
        c.conditional_gate("x", {kMemoryQubit}, cond);
        c.reset({kAncillaQubit});
        if (!noise.memory_idle.is_identity()) {
            c.channel(noise.memory_idle, {kMemoryQubit});
        }
    }
    c.measure({kMemoryQubit}, {2 * rounds}, noise.memory_readout);
    c.set_output({2 * rounds});
    c.validate();
    return c;
}

void QpSchedule::validate() const {
    if (rounds < 1 || rounds > kMaxProtectionRounds) {
        throw ValidationError("schedule rounds must be in [1, 31]");
    }
    if (!(p1 >= 0 && p1 < 0.5)) {
        throw ValidationError("X_p insertion probability must lie in [0, 1/2), got " + format_double(p1) +
                              "; the shot compensation 1/(1 - 2 p1) diverges at 1/2");
    }
}

uint64_t QpSchedule::total_shots() const {
    validate();
    if (!compensate) {
        return shots;
    }
    const double scaled = static_cast<double>(shots) / std::pow(1 - 2 * p1, rounds);
    return static_cast<uint64_t>(std::ceil(scaled - 1e-9));
}

double QpSchedule::effective_shots() const {
    return static_cast<double>(total_shots()) * std::pow(1 - 2 * p1, rounds);
}

std::vector<VariantAllocation> qp_schedule_variants(const QpSchedule &schedule, Rng &rng) {
    schedule.validate();
    const uint64_t total = schedule.total_shots();
    std::map<uint64_t, uint64_t> groups;
    if (schedule.p1 == 0) {
        groups[0] = total;
    } else {
        std::bernoulli_distribution insert(schedule.p1);
        for (uint64_t s = 0; s < total; s++) {
            uint64_t mask = 0;
            for (unsigned r = 0; r < schedule.rounds; r++) {
                if (insert(rng)) {
                    mask |= uint64_t{1} << r;
                }
            }
            groups[mask]++;
        }
    }
    std::vector<VariantAllocation> out;
    for (const auto &[mask, shots] : groups) {
        out.push_back({mask, (std::popcount(mask) & 1) ? -1 : 1, shots});
    }
    return out;
}

double variant_probability(const QpSchedule &schedule, uint64_t xp_rounds) {
    schedule.validate();
    if (xp_rounds >> schedule.rounds) {
        return 0;
    }
    const int k = std::popcount(xp_rounds);
    return std::pow(schedule.p1, k) * std::pow(1 - schedule.p1, static_cast<int>(schedule.rounds) - k);
}

SignedCombination combine_signed(std::span<const SignedCounts> results, unsigned width) {
    check_width(width);
    std::map<uint64_t, double> acc;
    SignedCombination out;
    for (const auto &r : results) {
        if (r.sign != 1 && r.sign != -1) {
            throw ValidationError("signed counts must carry sign +1 or -1");
        }
        for (const auto &[x, k] : r.counts) {
            if (x > low_mask(width)) {
                throw ValidationError("signed counts contain an outcome wider than the register");
            }
            acc[x] += r.sign * static_cast<double>(k);
            out.signed_total += r.sign * static_cast<double>(k);
            out.raw_shots += k;
        }
    }
    if (!(out.signed_total > 0)) {
        throw DegenerateDistributionError("signed shot total is " + format_double(out.signed_total) +
                                          "; the signed estimate is undefined");
    }
    std::vector<SignedDist::Entry> entries;
    for (const auto &[x, w] : acc) {
        entries.push_back({x, w / out.signed_total});
    }
    out.dist = SignedDist(width, std::move(entries));
    return out;
}

namespace {

McmPoint plain_point(const McmExperiment &exp, unsigned rounds) {
    const Circuit c = build_protection_circuit(rounds, exp.mode, exp.noise);
    const auto result = run_circuit(c, exp.shots, derive_seed(exp.seed, rounds));
    const double n = static_cast<double>(exp.shots);
    const auto it = result.counts.find(0);
    const double p = it == result.counts.end() ? 0.0 : static_cast<double>(it->second) / n;
    return {rounds, p, std::sqrt(p * (1 - p) / n), exp.shots, n};
}

McmPoint signed_point(const McmExperiment &exp, unsigned rounds, double p1) {
    const QpSchedule schedule{rounds, p1, exp.shots, exp.compensate};
    const uint64_t stream = derive_seed(exp.seed, rounds);
    Rng rng = make_rng(stream, 0);
    const auto variants = qp_schedule_variants(schedule, rng);
    std::vector<SignedCounts> results(variants.size());
    parallel_for(variants.size(), exp.threads, [&](std::size_t i) {
        const auto &v = variants[i];
        ProtectionVariant pv;
        pv.xp_rounds = v.xp_rounds;
        const Circuit c = build_protection_circuit(rounds, ProtectionMode::kMrcQprc, exp.noise, pv);
        results[i] = {v.sign, run_circuit(c, v.shots, derive_seed(stream, i + 1)).counts, v.xp_rounds};
    });
    const auto combined = combine_signed(results, 1);
    const double theta = combined.dist.weight(0);
    // Delta method for the ratio sum(s b) / sum(s) with s = +-1 signs.
    double n0 = 0;
    for (const auto &r : results) {
        const auto it = r.counts.find(0);
        n0 += it == r.counts.end() ? 0.0 : static_cast<double>(it->second);
    }
    const double n = static_cast<double>(combined.raw_shots);
    const double n1 = n - n0;
    const double mean_sign = combined.signed_total / n;
    const double spread = (n0 * (1 - theta) * (1 - theta) + n1 * theta * theta) / n;
    const double se = std::sqrt(spread / (n * mean_sign * mean_sign));
    return {rounds, theta, se, combined.raw_shots, schedule.effective_shots()};
}

}  // namespace

McmCurve run_mcm_experiment(const McmExperiment &exp) {
    if (exp.rounds < 1 || exp.rounds > kMaxProtectionRounds) {
        throw ValidationError("protection rounds must be in [1, 31], got " + std::to_string(exp.rounds));
    }
    if (exp.shots < 1) {
        throw ValidationError("experiment needs at least one shot per circuit");
    }
    exp.noise.validate();
    McmCurve curve;
    curve.mode = exp.mode;
    double p1 = 0;
    if (exp.mode == ProtectionMode::kMrcQprc) {
        if (exp.p1) {
            p1 = *exp.p1;
        } else {
            TwirlConfig cfg = exp.characterization;
            cfg.seed = derive_seed(exp.seed, 0);
            cfg.threads = exp.threads;
            p1 = 1.0 - characterize_error_distribution(exp.noise.ancilla_readout, 1, cfg).weight(0);
        }
        QpSchedule{1, p1, exp.shots, exp.compensate}.validate();
        curve.p1 = p1;
    }
    for (unsigned r = 1; r <= exp.rounds; r++) {
        McmPoint pt = exp.mode == ProtectionMode::kMrcQprc ? signed_point(exp, r, p1) : plain_point(exp, r);
        if (exp.target_precision > 0 && pt.stderr_ > exp.target_precision) {
            curve.warnings.push_back("round " + std::to_string(r) + ": standard error " + format_double(pt.stderr_) +
                                     " exceeds the target " + format_double(exp.target_precision) +
                                     "; increase shots");
        }
        curve.points.push_back(pt);
    }
    return curve;
}

}  // namespace romit
