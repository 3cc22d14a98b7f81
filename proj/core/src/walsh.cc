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

#include "romit/walsh.h"

#include <bit>

namespace romit {

namespace {

void check_dense_width(unsigned n) {
    if (n > kMaxDenseWidth) {
        throw ValidationError(
            "dense Walsh transform limited to " + std::to_string(kMaxDenseWidth) + " bits, got " +
            std::to_string(n));
    }
}

}  // namespace

void fwht_inplace(std::span<double> values) {
    const std::size_t size = values.size();
    if (!std::has_single_bit(size)) {
        throw ValidationError("fwht_inplace: length must be a power of two");
    }
    for (std::size_t h = 1; h < size; h <<= 1) {
        for (std::size_t i = 0; i < size; i += 2 * h) {
            for (std::size_t j = i; j < i + h; j++) {
                const double a = values[j];
                const double b = values[j + h];
                values[j] = a + b;
                values[j + h] = a - b;
            }
        }
    }
}

std::vector<double> walsh_transform(const SignedDist &d) {
    check_dense_width(d.width());
    std::vector<double> dense(std::size_t{1} << d.width(), 0.0);
    for (const auto &e : d.entries()) {
        dense[e.mask] = e.weight;
    }
    fwht_inplace(dense);
    return dense;
}

SignedDist inverse_walsh_transform(std::span<const double> spectrum, unsigned n, double prune_threshold) {
    check_dense_width(n);
    if (spectrum.size() != (std::size_t{1} << n)) {
        throw ValidationError("inverse_walsh_transform: spectrum length does not match 2^n");
    }
    std::vector<double> dense(spectrum.begin(), spectrum.end());
    fwht_inplace(dense);
    const double scale = 1.0 / static_cast<double>(dense.size());
    std::vector<SignedDist::Entry> out;
    for (std::size_t x = 0; x < dense.size(); x++) {
        const double w = dense[x] * scale;
        if (w != 0 && std::abs(w) >= prune_threshold) {
            out.push_back({x, w});
        }
    }
    return SignedDist(n, std::move(out));
}

}  // namespace romit
