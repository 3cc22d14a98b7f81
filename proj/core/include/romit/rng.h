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

#ifndef ROMIT_RNG_H
#define ROMIT_RNG_H

#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace romit {

using Rng = std::mt19937_64;

/// Deterministic child seed for substream `index` of `parent`.
///
/// Every random quantity in the library is drawn from a generator seeded by a
/// chain of these derivations (experiment -> circuit -> randomization ->
/// shot), so results depend only on the root seed and never on scheduling.
uint64_t derive_seed(uint64_t parent, uint64_t index);

inline Rng make_rng(uint64_t seed) {
    return Rng(seed);
}

inline Rng make_rng(uint64_t parent, uint64_t index) {
    return Rng(derive_seed(parent, index));
}

/// Splits `trials` over categories with the given probabilities using the
/// conditional-binomial method. Probabilities are renormalized internally, so
/// tiny rounding drift in their sum is harmless.
std::vector<uint64_t> sample_multinomial(uint64_t trials, std::span<const double> probabilities, Rng &rng);

}  // namespace romit

#endif
