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

#ifndef ROMIT_WALSH_H
#define ROMIT_WALSH_H

#include <span>
#include <vector>

#include "romit/signed_dist.h"

namespace romit {

/// Largest register the dense transform will materialize (2^24 doubles).
inline constexpr unsigned kMaxDenseWidth = 24;

/// Unnormalized in-place fast Walsh-Hadamard butterfly. Length must be a
/// power of two.
void fwht_inplace(std::span<double> values);

/// W[s] = sum_x d_x (-1)^popcount(x & s), dense over all 2^n characters.
std::vector<double> walsh_transform(const SignedDist &d);

/// Inverse of walsh_transform; entries with |w| < prune_threshold are dropped.
SignedDist inverse_walsh_transform(std::span<const double> spectrum, unsigned n, double prune_threshold = 0.0);

}  // namespace romit

#endif
