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

#ifndef ROMIT_QPRC_H
#define ROMIT_QPRC_H

#include <cmath>
#include <string>
#include <string_view>
#include <vector>

#include "romit/signed_dist.h"

namespace romit {

using Partition = std::vector<unsigned>;
using Stage = std::vector<Partition>;

/// How to build an approximate inverse: the series order, the prune
/// threshold for each convolution power, and optional partition stages
/// applied before the joint inverse.
struct InverseSpec {
    unsigned order = 1;
    double threshold = 1e-10;
    std::vector<Stage> stages;

    /// Throws ValidationError unless order >= 1 and every stage is a set of
    /// disjoint, non-empty partitions covering [0, n).
    void validate(unsigned n) const;

    AlgebraOptions algebra() const {
        AlgebraOptions opts;
        opts.prune_threshold = threshold;
        return opts;
    }

    /// Singletons, then pairs, then quadruples, ... stopping before a
    /// partition would cover the whole register.
    static InverseSpec doubling(unsigned n, unsigned order = 1, double threshold = 1e-10);
};

/// Reads {"order": 2, "threshold": 1e-10, "stages": [[[0], [1]], [[0, 1]]]}.
/// Missing fields keep their defaults.
InverseSpec inverse_spec_from_json(std::string_view json_text, unsigned n);
std::string inverse_spec_to_json(const InverseSpec &spec);

/// Marginal p_0 required of every partition, and the joint error level
/// below which the joint inverse may be taken directly.
inline constexpr double kPartitionMinP0 = 2.0 / 3.0;
inline constexpr double kJointMaxError = 1.0 / 3.0;

namespace detail {

template <typename Scalar>
Scalar zero_weight_checked(const BasicSignedDist<Scalar> &p, const char *op) {
    const Scalar p0 = p.weight(0);
    if (!(to_double(p0) > 0.5) || p0 * 2 <= Scalar(1)) {
        throw NonInvertibleChannelError(std::string(op) + ": weight at the zero string is " +
                                        std::to_string(to_double(p0)) +
                                        " <= 1/2, so the series does not converge; use a partitioned inverse");
    }
    return p0;
}

template <typename Scalar>
Scalar power(Scalar base, unsigned e) {
    Scalar out(1);
    while (e > 0) {
        if (e & 1) {
            out *= base;
        }
        base *= base;
        e >>= 1;
    }
    return out;
}

}  // namespace detail

/// q = (p_0 delta_0 - sum_{x != 0} p_x x) / (2 p_0 - 1).
template <typename Scalar>
BasicSignedDist<Scalar> first_order_inverse(const BasicSignedDist<Scalar> &p) {
    const Scalar p0 = detail::zero_weight_checked(p, "first_order_inverse");
    const Scalar denom = p0 * 2 - Scalar(1);
    std::vector<typename BasicSignedDist<Scalar>::Entry> out;
    for (const auto &e : p.entries()) {
        out.push_back({e.mask, (e.mask == 0 ? e.weight : Scalar(-e.weight)) / denom});
    }
    return BasicSignedDist<Scalar>(p.width(), std::move(out));
}

/// Order-k series: with E the off-zero part of p and
/// c = p_0^{2k-1} / (p_0^{2k} - (1 - p_0)^{2k}),
///
///     q^(k) = c * sum_{j=0}^{2k-1} (-1/p_0)^j E^j,
///
/// so that q^(k) (+) p = (p_0^{2k} delta_0 - E^{2k}) / (p_0^{2k} - (1-p_0)^{2k}).
/// Each power is pruned at opts.prune_threshold.
template <typename Scalar>
BasicSignedDist<Scalar> kth_order_inverse(
    const BasicSignedDist<Scalar> &p, unsigned k, const AlgebraOptions &opts = {}) {
    if (k < 1) {
        throw ValidationError("inverse order must be at least 1");
    }
    const Scalar p0 = detail::zero_weight_checked(p, "kth_order_inverse");
    const Scalar rest = Scalar(1) - p0;
    const Scalar c = detail::power(p0, 2 * k - 1) / (detail::power(p0, 2 * k) - detail::power(rest, 2 * k));

    std::vector<typename BasicSignedDist<Scalar>::Entry> off;
    for (const auto &e : p.entries()) {
        if (e.mask != 0) {
            off.push_back(e);
        }
    }
    const BasicSignedDist<Scalar> err(p.width(), std::move(off));
    const Scalar step = Scalar(-1) / p0;

    detail::SparseAccumulator<Scalar> acc(p.width(), opts);
    acc.add(0, c);
    auto term = BasicSignedDist<Scalar>::delta(p.width());
    Scalar coeff = c;
    for (unsigned j = 1; j <= 2 * k - 1; j++) {
        term = xor_convolve(term, err, opts);
        coeff *= step;
        for (const auto &e : term.entries()) {
            acc.add(e.mask, coeff * e.weight);
        }
    }
    return std::move(acc).finish();
}

/// N^(k) = N (+) q: every count at x is redistributed as x (+) q.
template <typename Scalar>
BasicSignedDist<Scalar> apply_correction(
    const BasicSignedDist<Scalar> &counts, const BasicSignedDist<Scalar> &q, const AlgebraOptions &opts = {}) {
    return xor_convolve(counts, q, opts);
}

/// Partitioned inverse. For each stage (until the running distribution has
/// |1 - p_0| < 1/3): marginalize the running distribution onto every
/// partition, invert each marginal at the spec's order, tensor the local
/// inverses and convolve them onto both the running distribution and the
/// compiled inverse. A joint inverse of the running distribution finishes
/// the composition. Throws NonInvertibleChannelError listing the offending
/// partitions when a marginal has p_0 <= 2/3, or when the stages leave
/// |1 - p_0| >= 1/3.
template <typename Scalar>
BasicSignedDist<Scalar> partitioned_inverse(const BasicSignedDist<Scalar> &p, const InverseSpec &spec) {
    const unsigned n = p.width();
    spec.validate(n);
    const AlgebraOptions opts = spec.algebra();
    auto joint_ok = [](const BasicSignedDist<Scalar> &d) {
        return std::abs(1.0 - to_double(d.weight(0))) < kJointMaxError;
    };
    auto running = p;
    auto compiled = BasicSignedDist<Scalar>::delta(n);
    for (std::size_t s = 0; s < spec.stages.size() && !joint_ok(running); s++) {
        std::string offending;
        auto stage_q = BasicSignedDist<Scalar>::delta(n);
        for (const auto &part : spec.stages[s]) {
            const auto m = marginalize(running, part);
            const double m0 = to_double(m.weight(0));
            if (!(m0 > kPartitionMinP0)) {
                offending += " {";
                for (std::size_t i = 0; i < part.size(); i++) {
                    offending += (i ? "," : "") + std::to_string(part[i]);
                }
                offending += "}: p_0=" + std::to_string(m0);
                continue;
            }
            const auto local = embed(kth_order_inverse(m, spec.order, opts), part, n);
            stage_q = xor_convolve(stage_q, local, opts);
        }
        if (!offending.empty()) {
            throw NonInvertibleChannelError("stage " + std::to_string(s + 1) +
                                            ": partition marginals need p_0 > 2/3, failing:" + offending);
        }
        running = xor_convolve(stage_q, running, opts);
        compiled = xor_convolve(stage_q, compiled, opts);
    }
    if (!joint_ok(running)) {
        throw NonInvertibleChannelError("after all stages the weight at the zero string is " +
                                        std::to_string(to_double(running.weight(0))) +
                                        "; the joint inverse needs |1 - p_0| < 1/3, add coarser stages");
    }
    return xor_convolve(kth_order_inverse(running, spec.order, opts), compiled, opts);
}

/// Exact convolution inverse through the Walsh domain (n <= 16). Throws
/// NonInvertibleChannelError when a Walsh coefficient vanishes.
SignedDist walsh_exact_inverse(const SignedDist &p);

/// Walsh coefficient of p at `support`: sum_x p_x (-1)^popcount(x & support).
/// Dividing a raw Pauli-Z expectation on `support` by it undoes the readout
/// attenuation. Throws ValidationError for quasi input and
/// NonInvertibleChannelError when |factor| < 1e-9.
double expectation_rescale_factor(const SignedDist &p, uint64_t support);

}  // namespace romit

#endif
