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

#include <cctype>

#include "json.hpp"
#include "romit/errors.h"
#include "romit/noise.h"

namespace romit {

namespace {

using nlohmann::json;

[[noreturn]] void fail(std::string_view where, const std::string &path, const std::string &msg) {
    throw ValidationError(std::string(where) + path + ": " + msg);
}

double number_field(const json &j, const char *key, std::string_view where, const std::string &path) {
    if (!j.contains(key) || !j[key].is_number()) {
        fail(where, path + "/" + key, "expected a number");
    }
    return j[key].get<double>();
}

}  // namespace

NoiseChannel noise_from_json(std::string_view json_text, unsigned arity, std::string_view where) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error &e) {
        fail(where, "", e.what());
    }
    if (doc.is_null()) {
        return NoiseChannel::identity(arity);
    }
    if (!doc.is_array()) {
        fail(where, "", "noise model must be a list of channel objects");
    }
    std::vector<ChannelPlacement> parts;
    for (std::size_t i = 0; i < doc.size(); i++) {
        const json &c = doc[i];
        const std::string path = "/" + std::to_string(i);
        if (!c.is_object() || !c.contains("type") || !c["type"].is_string()) {
            fail(where, path + "/type", "expected a channel type string");
        }
        if (!c.contains("qubits") || !c["qubits"].is_array()) {
            fail(where, path + "/qubits", "expected a list of qubit indices");
        }
        std::vector<unsigned> qubits;
        for (std::size_t k = 0; k < c["qubits"].size(); k++) {
            const json &q = c["qubits"][k];
            if (!q.is_number_unsigned() || q.get<unsigned>() >= arity) {
                fail(where, path + "/qubits/" + std::to_string(k),
                     "qubit index must be an integer in [0, " + std::to_string(arity) + ")");
            }
            qubits.push_back(q.get<unsigned>());
        }
        const std::string type = c["type"].get<std::string>();
        NoiseChannel ch;
        auto build = [&](auto &&make) {
            try {
                ch = make();
            } catch (const ValidationError &e) {
                fail(where, path, e.what());
            }
        };
        if (type == "amplitude_damping") {
            const double gamma = number_field(c, "gamma", where, path);
            build([&] { return amplitude_damping(gamma); });
        } else if (type == "bit_flip") {
            const double p = number_field(c, "p", where, path);
            build([&] { return bit_flip(p); });
        } else if (type == "coherent_rotation") {
            if (!c.contains("axis") || !c["axis"].is_string() || c["axis"].get<std::string>().size() != 1) {
                fail(where, path + "/axis", "expected one of \"x\", \"y\", \"z\"");
            }
            const char axis = static_cast<char>(std::toupper(c["axis"].get<std::string>()[0]));
            if (axis != 'X' && axis != 'Y' && axis != 'Z') {
                fail(where, path + "/axis", "expected one of \"x\", \"y\", \"z\"");
            }
            const double theta = number_field(c, "theta", where, path);
            build([&] { return coherent_rotation(pauli_from_char(axis), theta); });
        } else if (type == "crosstalk") {
            const double delta = number_field(c, "delta", where, path);
            build([&] { return correlated_crosstalk(delta); });
        } else {
            fail(where, path + "/type",
                 "unknown channel type '" + type +
                     "' (expected amplitude_damping, bit_flip, coherent_rotation, crosstalk)");
        }
        if (qubits.size() != ch.arity()) {
            fail(where, path + "/qubits", "channel '" + type + "' needs exactly " + std::to_string(ch.arity()) + " qubit(s)");
        }
        parts.push_back({std::move(ch), std::move(qubits)});
    }
    return composite(arity, parts);
}

}  // namespace romit
