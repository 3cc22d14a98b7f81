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

#ifndef ROMIT_DIST_IO_H
#define ROMIT_DIST_IO_H

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "romit/signed_dist.h"

namespace romit {

/// Ordered key/value pairs written ahead of serialized data.
using Metadata = std::vector<std::pair<std::string, std::string>>;

struct ParsedDist {
    SignedDist dist;
    Metadata header;
};

/// Text form, one record per line:
///
///     # width: 3
///     # kind: quasi
///     # <extra header keys...>
///     001,0.97000000000000008
///
/// Bit strings are MSB-left (qubit 0 is the last character); weights use 17
/// significant digits so that reading the text back is bit-exact.
std::string write_dist_text(const SignedDist &d, const Metadata &header = {});
ParsedDist read_dist_text(std::string_view text);

/// JSON form: {"n": 3, "kind": "quasi", "entries": [{"bits": "001", "weight": 0.97}], "metadata": {...}}.
std::string write_dist_json(const SignedDist &d, const Metadata &header = {});
ParsedDist read_dist_json(std::string_view text);

std::string to_string(DistKind kind);

/// %.17g rendering used by every text writer in the library.
std::string format_double(double v);

/// FNV-1a 64-bit hash rendered as 16 hex digits; used for provenance headers.
std::string content_hash(std::string_view bytes);

}  // namespace romit

#endif
