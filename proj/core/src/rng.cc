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

#include "romit/rng.h"

#include <algorithm>

#include "romit/errors.h"

namespace romit {

namespace {

uint64_t splitmix64(uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

}  // namespace

uint64_t derive_seed(uint64_t parent, uint64_t index) {
    return splitmix64(splitmix64(parent) ^ splitmix64(index + 0x632BE59BD9B4E019ULL));
}

std::vector<uint64_t> sample_multinomial(uint64_t trials, std::span<const double> probabilities, Rng &rng) {
    std::vector<uint64_t> out(probabilities.size(), 0);
    double remaining_mass = 0;
    for (double p : probabilities) {
        if (p < 0) {
            if (p < -1e-9) {
                throw ValidationError("sample_multinomial: negative probability");
            }
            continue;
        }
        remaining_mass += p;
    }
    if (remaining_mass <= 0) {
        throw NumericalError("sample_multinomial: probabilities sum to zero");
    }
    uint64_t remaining = trials;
    for (std::size_t i = 0; i < probabilities.size() && remaining > 0; i++) {
        const double p = std::max(0.0, probabilities[i]);
        if (p <= 0) {
            continue;
        }
        if (p >= remaining_mass) {
            out[i] = remaining;
            remaining = 0;
            break;
        }
        std::binomial_distribution<uint64_t> binom(remaining, std::clamp(p / remaining_mass, 0.0, 1.0));
        out[i] = binom(rng);
        remaining -= out[i];
        remaining_mass -= p;
    }
    if (remaining > 0) {
        // Only reachable through rounding; park the leftovers on the last
        // positive category.
        for (std::size_t i = probabilities.size(); i-- > 0;) {
            if (probabilities[i] > 0) {
                out[i] += remaining;
                break;
            }
        }
    }
    return out;
}

}  // namespace romit
