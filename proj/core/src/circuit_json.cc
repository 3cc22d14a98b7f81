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

#include "json.hpp"
#include "romit/circuit.h"
#include "romit/errors.h"

namespace romit {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string &path, const std::string &msg) {
    throw ValidationError("circuit" + path + ": " + msg);
}

unsigned unsigned_field(const json &j, const char *key, const std::string &path) {
    if (!j.contains(key) || !j[key].is_number_unsigned()) {
        fail(path + "/" + key, "expected a non-negative integer");
    }
    return j[key].get<unsigned>();
}

std::vector<unsigned> index_list(const json &j, const char *key, const std::string &path) {
    if (!j.contains(key) || !j[key].is_array()) {
        fail(path + "/" + key, "expected a list of non-negative integers");
    }
    std::vector<unsigned> out;
    for (std::size_t i = 0; i < j[key].size(); i++) {
        const json &v = j[key][i];
        if (!v.is_number_unsigned() || v.get<uint64_t>() > 1024) {
            fail(path + "/" + key + "/" + std::to_string(i), "expected a non-negative integer");
        }
        out.push_back(v.get<unsigned>());
    }
    return out;
}

NoiseChannel node_noise(const json &node, unsigned arity, const std::string &path) {
    if (!node.contains("noise")) {
        return NoiseChannel::identity(arity);
    }
    return noise_from_json(node["noise"].dump(), arity, "circuit" + path + "/noise");
}

}  // namespace

Circuit circuit_from_json(std::string_view json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error &e) {
        fail("", e.what());
    }
    if (!doc.is_object()) {
        fail("", "expected a JSON object");
    }
    const unsigned n = unsigned_field(doc, "qubits", "");
    const unsigned clbits = doc.contains("clbits") ? unsigned_field(doc, "clbits", "") : n;
    Circuit circuit = [&] {
        try {
            return Circuit(n, clbits);
        } catch (const ValidationError &e) {
            fail("/qubits", e.what());
        }
    }();
    if (!doc.contains("nodes") || !doc["nodes"].is_array()) {
        fail("/nodes", "expected a list of nodes");
    }
    for (std::size_t i = 0; i < doc["nodes"].size(); i++) {
        const json &node = doc["nodes"][i];
        const std::string path = "/nodes/" + std::to_string(i);
        if (!node.is_object() || !node.contains("op") || !node["op"].is_string()) {
            fail(path + "/op", "expected an op name");
        }
        const std::string op = node["op"].get<std::string>();
        const auto targets = index_list(node, "targets", path);
        for (std::size_t k = 0; k < targets.size(); k++) {
            if (targets[k] >= n) {
                fail(path + "/targets/" + std::to_string(k), "qubit index outside the register");
            }
        }
        if (op == "measure") {
            const auto slots = index_list(node, "slots", path);
            circuit.measure(targets, slots, MeasurementModel(node_noise(node, static_cast<unsigned>(targets.size()), path)));
        } else if (op == "twirl") {
            circuit.twirl(targets, index_list(node, "slots", path));
        } else if (op == "reset") {
            circuit.reset(targets);
        } else if (op == "channel") {
            if (!node.contains("noise")) {
                fail(path + "/noise", "channel node needs a noise list");
            }
            circuit.channel(node_noise(node, static_cast<unsigned>(targets.size()), path), targets);
        } else {
            std::vector<double> params;
            if (node.contains("params")) {
                if (!node["params"].is_array()) {
                    fail(path + "/params", "expected a list of numbers");
                }
                for (std::size_t k = 0; k < node["params"].size(); k++) {
                    if (!node["params"][k].is_number()) {
                        fail(path + "/params/" + std::to_string(k), "expected a number");
                    }
                    params.push_back(node["params"][k].get<double>());
                }
            }
            CMatrix matrix;
            try {
                matrix = gates::by_name(op, params);
            } catch (const ValidationError &e) {
                fail(path + "/op", e.what());
            }
            GateOp g{op, std::move(matrix), targets, std::nullopt};
            if (node.contains("condition")) {
                const json &c = node["condition"];
                const std::string cpath = path + "/condition";
                if (!c.is_object()) {
                    fail(cpath, "expected {\"slots\": [...], \"equals\": 0|1}");
                }
                Condition cond;
                cond.slots = index_list(c, "slots", cpath);
                const unsigned equals = c.contains("equals") ? unsigned_field(c, "equals", cpath) : 1;
                if (equals > 1) {
                    fail(cpath + "/equals", "expected 0 or 1");
                }
                cond.parity = equals == 1;
                g.condition = std::move(cond);
            }
            circuit.append(std::move(g));
        }
    }
    if (doc.contains("output")) {
        circuit.set_output(index_list(doc, "output", ""));
    } else {
        std::vector<unsigned> all(clbits);
        for (unsigned s = 0; s < clbits; s++) {
            all[s] = s;
        }
        circuit.set_output(all);
    }
    try {
        circuit.validate();
    } catch (const ValidationError &e) {
        fail("", e.what());
    }
    return circuit;
}

}  // namespace romit
