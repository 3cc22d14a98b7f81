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

#include "romit/bit_string.h"

#include "romit/errors.h"

namespace romit {

void check_width(unsigned n) {
    if (n < 1 || n > kMaxWidth) {
        throw ValidationError("register width must be in [1, 63], got " + std::to_string(n));
    }
}

BitString BitString::make(unsigned n, uint64_t mask) {
    check_width(n);
    if (mask & ~low_mask(n)) {
        throw ValidationError("bit mask " + std::to_string(mask) + " does not fit in " + std::to_string(n) + " bits");
    }
    return BitString{n, mask};
}

BitString BitString::parse(std::string_view text) {
    if (text.empty()) {
        throw ValidationError("empty bit string");
    }
    check_width(static_cast<unsigned>(text.size()));
    uint64_t mask = 0;
    for (char c : text) {
        if (c != '0' && c != '1') {
            throw ValidationError("bit string may only contain 0 and 1: '" + std::string(text) + "'");
        }
        mask = (mask << 1) | static_cast<uint64_t>(c == '1');
    }
    return BitString{static_cast<unsigned>(text.size()), mask};
}

std::string BitString::str() const {
    return bits_to_string(mask, n);
}

std::string bits_to_string(uint64_t mask, unsigned n) {
    std::string out(n, '0');
    for (unsigned q = 0; q < n; q++) {
        if ((mask >> q) & 1) {
            out[n - 1 - q] = '1';
        }
    }
    return out;
}

uint64_t total_shots(const Counts &counts) {
    uint64_t total = 0;
    for (const auto &[_, c] : counts) {
        total += c;
    }
    return total;
}

}  // namespace romit
