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

#ifndef ROMIT_SIGNED_DIST_H
#define ROMIT_SIGNED_DIST_H

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <string>
#include <type_traits>
#include <unordered_map>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "romit/bit_string.h"
#include "romit/errors.h"

namespace romit {

/// Exact arithmetic scalar used for fixture-grade computations.
using Rational = boost::multiprecision::cpp_rational;

enum class DistKind {
    kProbability,  // nonnegative, total weight 1
    kQuasi,        // anything else: signed weights, or an unnormalized measure
};

/// Knobs shared by every operation that can grow a support.
struct AlgebraOptions {
    /// Entries with |w| below this are dropped after each product. Ignored
    /// for exact scalars, where only exact zeros are dropped.
    double prune_threshold = 1e-12;
    /// Maximum number of distinct bit strings an intermediate result may hold.
    std::size_t support_cap = std::size_t{1} << 24;
};

/// Weights whose total lies within this of 1 count as normalized.
inline constexpr double kNormalizationTolerance = 1e-9;

template <typename Scalar>
double to_double(const Scalar &s) {
    if constexpr (std::is_floating_point_v<Scalar>) {
        return static_cast<double>(s);
    } else {
        return s.template convert_to<double>();
    }
}

template <typename Scalar>
bool is_pruned(const Scalar &w, double threshold) {
    if constexpr (std::is_floating_point_v<Scalar>) {
        return std::abs(w) < threshold || w == 0;
    } else {
        return w == 0;
    }
}

/// Sparse signed weights over n-bit strings: the group algebra of Z_2^n.
///
/// Entries are kept sorted by mask with no duplicates and no exact zeros, so
/// iteration order (and therefore floating point summation order) is fixed.
/// Values are immutable after construction.
template <typename Scalar>
class BasicSignedDist {
   public:
    struct Entry {
        uint64_t mask;
        Scalar weight;
        bool operator==(const Entry &other) const = default;
    };

    BasicSignedDist() : BasicSignedDist(1) {
    }

    /// The zero measure on n bits.
    explicit BasicSignedDist(unsigned n) : n_(n) {
        check_width(n);
        kind_ = DistKind::kQuasi;
    }

    /// Duplicate masks are summed; exact zeros are dropped.
    BasicSignedDist(unsigned n, std::vector<Entry> entries) : n_(n), entries_(std::move(entries)) {
        check_width(n);
        const uint64_t allowed = low_mask(n);
        for (const auto &e : entries_) {
            if (e.mask & ~allowed) {
                throw ValidationError(
                    "bit string " + std::to_string(e.mask) + " does not fit in " + std::to_string(n) + " bits");
            }
            if constexpr (std::is_floating_point_v<Scalar>) {
                if (!std::isfinite(e.weight)) {
                    throw ValidationError("distribution weights must be finite");
                }
            }
        }
        normalize_storage();
    }

    static BasicSignedDist delta(unsigned n, uint64_t mask = 0) {
        return BasicSignedDist(n, {Entry{mask, Scalar(1)}});
    }

    static BasicSignedDist uniform(unsigned n) {
        if (n > 24) {
            throw ValidationError("uniform distribution over more than 2^24 strings requested");
        }
        std::vector<Entry> entries;
        const uint64_t size = uint64_t{1} << n;
        entries.reserve(size);
        for (uint64_t x = 0; x < size; x++) {
            entries.push_back({x, Scalar(1) / Scalar(size)});
        }
        return BasicSignedDist(n, std::move(entries));
    }

    unsigned width() const {
        return n_;
    }
    DistKind kind() const {
        return kind_;
    }
    bool is_probability() const {
        return kind_ == DistKind::kProbability;
    }
    std::span<const Entry> entries() const {
        return entries_;
    }
    std::size_t support_size() const {
        return entries_.size();
    }

    Scalar weight(uint64_t mask) const {
        auto it = std::lower_bound(
            entries_.begin(), entries_.end(), mask, [](const Entry &e, uint64_t m) { return e.mask < m; });
        if (it != entries_.end() && it->mask == mask) {
            return it->weight;
        }
        return Scalar(0);
    }

    Scalar total() const {
        Scalar t(0);
        for (const auto &e : entries_) {
            t += e.weight;
        }
        return t;
    }

    Scalar min_weight() const {
        Scalar m(0);
        for (const auto &e : entries_) {
            m = std::min(m, e.weight);
        }
        return m;
    }

    BasicSignedDist scaled(const Scalar &factor) const {
        std::vector<Entry> out = entries_;
        for (auto &e : out) {
            e.weight *= factor;
        }
        return BasicSignedDist(n_, std::move(out));
    }

    /// Copy without entries whose magnitude is below `threshold`.
    BasicSignedDist pruned(double threshold) const {
        std::vector<Entry> out;
        out.reserve(entries_.size());
        for (const auto &e : entries_) {
            if (!is_pruned(e.weight, threshold)) {
                out.push_back(e);
            }
        }
        return BasicSignedDist(n_, std::move(out));
    }

    bool operator==(const BasicSignedDist &other) const {
        return n_ == other.n_ && entries_ == other.entries_;
    }

   private:
    void normalize_storage() {
        std::sort(entries_.begin(), entries_.end(), [](const Entry &a, const Entry &b) { return a.mask < b.mask; });
        std::vector<Entry> merged;
        merged.reserve(entries_.size());
        for (auto &e : entries_) {
            if (!merged.empty() && merged.back().mask == e.mask) {
                merged.back().weight += e.weight;
            } else {
                merged.push_back(std::move(e));
            }
        }
        std::erase_if(merged, [](const Entry &e) { return e.weight == 0; });
        entries_ = std::move(merged);

        bool negative = false;
        for (const auto &e : entries_) {
            negative |= e.weight < 0;
        }
        const bool normalized = std::abs(to_double(total()) - 1.0) <= kNormalizationTolerance;
        kind_ = (!negative && normalized) ? DistKind::kProbability : DistKind::kQuasi;
    }

    unsigned n_;
    std::vector<Entry> entries_;
    DistKind kind_ = DistKind::kQuasi;
};

using SignedDist = BasicSignedDist<double>;
using RationalDist = BasicSignedDist<Rational>;

namespace detail {

template <typename Scalar>
class SparseAccumulator {
   public:
    SparseAccumulator(unsigned n, const AlgebraOptions &opts) : n_(n), opts_(opts) {
    }

    void add(uint64_t mask, const Scalar &w) {
        auto [it, inserted] = acc_.try_emplace(mask, w);
        if (!inserted) {
            it->second += w;
        } else if (acc_.size() > opts_.support_cap) {
            throw SupportExplosionError(
                "intermediate support exceeded the cap of " + std::to_string(opts_.support_cap) +
                " bit strings; raise the prune threshold or partition the register");
        }
    }

    BasicSignedDist<Scalar> finish() && {
        std::vector<typename BasicSignedDist<Scalar>::Entry> out;
        out.reserve(acc_.size());
        for (auto &[mask, w] : acc_) {
            if (!is_pruned(w, opts_.prune_threshold)) {
                out.push_back({mask, std::move(w)});
            }
        }
        return BasicSignedDist<Scalar>(n_, std::move(out));
    }

   private:
    unsigned n_;
    AlgebraOptions opts_;
    std::unordered_map<uint64_t, Scalar> acc_;
};

inline void require_same_width(unsigned a, unsigned b, const char *op) {
    if (a != b) {
        throw ValidationError(
            std::string(op) + ": register widths differ (" + std::to_string(a) + " vs " + std::to_string(b) + ")");
    }
}

inline uint64_t scatter_bits(uint64_t local, std::span<const unsigned> qubits) {
    uint64_t out = 0;
    for (std::size_t i = 0; i < qubits.size(); i++) {
        out |= ((local >> i) & 1) << qubits[i];
    }
    return out;
}

inline uint64_t gather_bits(uint64_t global, std::span<const unsigned> qubits) {
    uint64_t out = 0;
    for (std::size_t i = 0; i < qubits.size(); i++) {
        out |= ((global >> qubits[i]) & 1) << i;
    }
    return out;
}

void check_qubit_list(std::span<const unsigned> qubits, unsigned n, const char *op);

}  // namespace detail

/// Group-algebra product: result_z = sum over x ^ y == z of a_x * b_y.
template <typename Scalar>
BasicSignedDist<Scalar> xor_convolve(
    const BasicSignedDist<Scalar> &a, const BasicSignedDist<Scalar> &b, const AlgebraOptions &opts = {}) {
    detail::require_same_width(a.width(), b.width(), "xor_convolve");
    detail::SparseAccumulator<Scalar> acc(a.width(), opts);
    for (const auto &ea : a.entries()) {
        for (const auto &eb : b.entries()) {
            acc.add(ea.mask ^ eb.mask, ea.weight * eb.weight);
        }
    }
    return std::move(acc).finish();
}

/// j-fold XOR self-convolution; j == 0 gives the identity element.
template <typename Scalar>
BasicSignedDist<Scalar> convolve_power(const BasicSignedDist<Scalar> &d, unsigned j, const AlgebraOptions &opts = {}) {
    auto result = BasicSignedDist<Scalar>::delta(d.width());
    auto base = d;
    while (j > 0) {
        if (j & 1) {
            result = xor_convolve(result, base, opts);
        }
        j >>= 1;
        if (j > 0) {
            base = xor_convolve(base, base, opts);
        }
    }
    return result;
}

/// Sums out every qubit not listed in `keep`. Bit i of the result is qubit
/// keep[i] of the input, in the order given.
template <typename Scalar>
BasicSignedDist<Scalar> marginalize(const BasicSignedDist<Scalar> &d, std::span<const unsigned> keep) {
    if (keep.empty()) {
        throw ValidationError("marginalize: the set of kept qubits is empty");
    }
    detail::check_qubit_list(keep, d.width(), "marginalize");
    std::vector<typename BasicSignedDist<Scalar>::Entry> out;
    out.reserve(d.support_size());
    for (const auto &e : d.entries()) {
        out.push_back({detail::gather_bits(e.mask, keep), e.weight});
    }
    return BasicSignedDist<Scalar>(static_cast<unsigned>(keep.size()), std::move(out));
}

/// Places d on the listed qubits of a wider register (bit i -> qubits[i]).
template <typename Scalar>
BasicSignedDist<Scalar> embed(const BasicSignedDist<Scalar> &d, std::span<const unsigned> qubits, unsigned width) {
    if (qubits.size() != d.width()) {
        throw ValidationError("embed: qubit list length does not match the distribution width");
    }
    detail::check_qubit_list(qubits, width, "embed");
    std::vector<typename BasicSignedDist<Scalar>::Entry> out;
    out.reserve(d.support_size());
    for (const auto &e : d.entries()) {
        out.push_back({detail::scatter_bits(e.mask, qubits), e.weight});
    }
    return BasicSignedDist<Scalar>(width, std::move(out));
}

/// Outer product of distributions living on disjoint qubit sets. The result
/// width is `width`, or one past the largest listed qubit when width is 0.
template <typename Scalar>
BasicSignedDist<Scalar> tensor_product(
    const BasicSignedDist<Scalar> &a,
    std::span<const unsigned> a_qubits,
    const BasicSignedDist<Scalar> &b,
    std::span<const unsigned> b_qubits,
    unsigned width = 0) {
    for (unsigned qa : a_qubits) {
        if (std::find(b_qubits.begin(), b_qubits.end(), qa) != b_qubits.end()) {
            throw ValidationError("tensor_product: qubit " + std::to_string(qa) + " appears in both index sets");
        }
    }
    if (width == 0) {
        for (unsigned q : a_qubits) {
            width = std::max(width, q + 1);
        }
        for (unsigned q : b_qubits) {
            width = std::max(width, q + 1);
        }
    }
    auto ea = embed(a, a_qubits, width);
    auto eb = embed(b, b_qubits, width);
    std::vector<typename BasicSignedDist<Scalar>::Entry> out;
    out.reserve(ea.support_size() * eb.support_size());
    for (const auto &x : ea.entries()) {
        for (const auto &y : eb.entries()) {
            out.push_back({x.mask | y.mask, x.weight * y.weight});
        }
    }
    return BasicSignedDist<Scalar>(width, std::move(out));
}

/// Half the L1 distance, summed over the union of supports.
template <typename Scalar>
double tvd(const BasicSignedDist<Scalar> &a, const BasicSignedDist<Scalar> &b) {
    detail::require_same_width(a.width(), b.width(), "tvd");
    auto ia = a.entries().begin();
    auto ib = b.entries().begin();
    double sum = 0;
    while (ia != a.entries().end() || ib != b.entries().end()) {
        if (ib == b.entries().end() || (ia != a.entries().end() && ia->mask < ib->mask)) {
            sum += std::abs(to_double(ia->weight));
            ++ia;
        } else if (ia == a.entries().end() || ib->mask < ia->mask) {
            sum += std::abs(to_double(ib->weight));
            ++ib;
        } else {
            sum += std::abs(to_double(Scalar(ia->weight - ib->weight)));
            ++ia;
            ++ib;
        }
    }
    return sum / 2;
}

/// Sum of |weight| over every nonzero bit string.
template <typename Scalar>
double off_zero_mass(const BasicSignedDist<Scalar> &d) {
    double m = 0;
    for (const auto &e : d.entries()) {
        if (e.mask != 0) {
            m += std::abs(to_double(e.weight));
        }
    }
    return m;
}

/// Entropy in bits. Throws ValidationError for quasi distributions.
double shannon_entropy(const SignedDist &d);

enum class ClipPolicy {
    kClipRenormalize,  // zero negatives, rescale to total 1
    kClipOnly,         // zero negatives, leave the total as is
    kKeep,             // return the input untouched
};

std::string to_string(ClipPolicy policy);
ClipPolicy parse_clip_policy(std::string_view text);

struct ClippedDist {
    SignedDist dist;
    ClipPolicy policy;
    /// Total negative weight that was removed (0 under kKeep).
    double clipped_mass = 0;
};

/// Throws DegenerateDistributionError when kClipRenormalize leaves no
/// positive weight.
ClippedDist clip_to_probability(const SignedDist &d, ClipPolicy policy);

/// Empirical frequencies; throws ValidationError for an empty histogram.
SignedDist from_counts(unsigned n, const Counts &counts);

SignedDist to_double(const RationalDist &d);
/// Exact conversion: every double is a dyadic rational.
RationalDist to_rational(const SignedDist &d);

}  // namespace romit

#endif
