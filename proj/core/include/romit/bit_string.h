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

#ifndef ROMIT_BIT_STRING_H
#define ROMIT_BIT_STRING_H

#include <bit>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>

namespace romit {

inline constexpr unsigned kMaxWidth = 63;

/// An n-bit classical outcome. Bit i of `mask` is qubit i, so qubit 0 is the
/// least significant bit. Text renderings are MSB-left: qubit 0 is the last
/// character.
struct BitString {
    unsigned n = 1;
    uint64_t mask = 0;

    /// Throws ValidationError unless 1 <= n <= 63 and mask < 2^n.
    static BitString make(unsigned n, uint64_t mask);
    /// Parses literal 0/1 text, MSB-left.
    static BitString parse(std::string_view text);

    std::string str() const;
    bool bit(unsigned qubit) const {
        return (mask >> qubit) & 1;
    }

    bool operator==(const BitString &other) const = default;
};

/// Outcome histogram keyed by bitmask.
using Counts = std::map<uint64_t, uint64_t>;

inline uint64_t low_mask(unsigned n) {
    return n >= 64 ? ~uint64_t{0} : ((uint64_t{1} << n) - 1);
}

inline int parity(uint64_t x) {
    return std::popcount(x) & 1;
}

/// MSB-left text for the low n bits of mask.
std::string bits_to_string(uint64_t mask, unsigned n);

/// Throws ValidationError when n is outside [1, 63].
void check_width(unsigned n);

uint64_t total_shots(const Counts &counts);

}  // namespace romit

#endif
