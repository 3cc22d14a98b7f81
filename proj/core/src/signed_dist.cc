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

#include "romit/signed_dist.h"

namespace romit {

void detail::check_qubit_list(std::span<const unsigned> qubits, unsigned n, const char *op) {
    uint64_t seen = 0;
    for (unsigned q : qubits) {
        if (q >= n) {
            throw ValidationError(
                std::string(op) + ": qubit " + std::to_string(q) + " is outside a " + std::to_string(n) +
                "-bit register");
        }
        if ((seen >> q) & 1) {
            throw ValidationError(std::string(op) + ": qubit " + std::to_string(q) + " listed twice");
        }
        seen |= uint64_t{1} << q;
    }
}

double shannon_entropy(const SignedDist &d) {
    if (!d.is_probability()) {
        throw ValidationError("shannon_entropy: entropy is undefined for quasi-probability distributions");
    }
    double s = 0;
    for (const auto &e : d.entries()) {
        if (e.weight > 0) {
            s -= e.weight * std::log2(e.weight);
        }
    }
    return s == 0 ? 0.0 : s;
}

std::string to_string(ClipPolicy policy) {
    switch (policy) {
        case ClipPolicy::kClipRenormalize:
            return "clip-renormalize";
        case ClipPolicy::kClipOnly:
            return "clip-only";
        case ClipPolicy::kKeep:
            return "keep";
    }
    return "unknown";
}

ClipPolicy parse_clip_policy(std::string_view text) {
    if (text == "clip-renormalize") {
        return ClipPolicy::kClipRenormalize;
    }
    if (text == "clip-only") {
        return ClipPolicy::kClipOnly;
    }
    if (text == "keep") {
        return ClipPolicy::kKeep;
    }
    throw ValidationError("unknown clip policy '" + std::string(text) + "' (expected clip-renormalize, clip-only, keep)");
}

ClippedDist clip_to_probability(const SignedDist &d, ClipPolicy policy) {
    if (policy == ClipPolicy::kKeep) {
        return {d, policy, 0.0};
    }
    std::vector<SignedDist::Entry> kept;
    double removed = 0;
    double positive = 0;
    for (const auto &e : d.entries()) {
        if (e.weight > 0) {
            kept.push_back(e);
            positive += e.weight;
        } else {
            removed += -e.weight;
        }
    }
    if (policy == ClipPolicy::kClipRenormalize) {
        if (positive <= 0) {
            throw DegenerateDistributionError("clip_to_probability: no positive weight left to renormalize");
        }
        if (removed > 0 || std::abs(positive - 1.0) > kNormalizationTolerance) {
            for (auto &e : kept) {
                e.weight /= positive;
            }
        }
    }
    return {SignedDist(d.width(), std::move(kept)), policy, removed};
}

SignedDist from_counts(unsigned n, const Counts &counts) {
    const uint64_t total = total_shots(counts);
    if (total == 0) {
        throw ValidationError("cannot normalize an empty histogram");
    }
    std::vector<SignedDist::Entry> out;
    out.reserve(counts.size());
    for (const auto &[mask, c] : counts) {
        out.push_back({mask, static_cast<double>(c) / static_cast<double>(total)});
    }
    return SignedDist(n, std::move(out));
}

SignedDist to_double(const RationalDist &d) {
    std::vector<SignedDist::Entry> out;
    out.reserve(d.support_size());
    for (const auto &e : d.entries()) {
        out.push_back({e.mask, e.weight.convert_to<double>()});
    }
    return SignedDist(d.width(), std::move(out));
}

RationalDist to_rational(const SignedDist &d) {
    std::vector<RationalDist::Entry> out;
    out.reserve(d.support_size());
    for (const auto &e : d.entries()) {
        out.push_back({e.mask, Rational(e.weight)});
    }
    return RationalDist(d.width(), std::move(out));
}

}  // namespace romit
