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

#include "romit/qprc.h"

#include <bit>

#include "json.hpp"
#include "romit/dist_io.h"
#include "romit/walsh.h"

namespace romit {

void InverseSpec::validate(unsigned n) const {
    if (order < 1) {
        throw ValidationError("inverse order must be at least 1");
    }
    if (!(threshold >= 0) || !std::isfinite(threshold)) {
        throw ValidationError("truncation threshold must be a finite non-negative number");
    }
    for (std::size_t s = 0; s < stages.size(); s++) {
        const std::string where = "stage " + std::to_string(s + 1);
        uint64_t covered = 0;
        for (const auto &part : stages[s]) {
            if (part.empty()) {
                throw ValidationError(where + ": empty partition");
            }
            for (unsigned q : part) {
                if (q >= n) {
                    throw ValidationError(where + ": qubit " + std::to_string(q) + " is outside the register");
                }
                if ((covered >> q) & 1) {
                    throw ValidationError(where + ": qubit " + std::to_string(q) + " is in two partitions");
                }
                covered |= uint64_t{1} << q;
            }
        }
        if (covered != low_mask(n)) {
            throw ValidationError(where + ": partitions do not cover the register");
        }
    }
}

InverseSpec InverseSpec::doubling(unsigned n, unsigned order, double threshold) {
    InverseSpec spec;
    spec.order = order;
    spec.threshold = threshold;
    for (unsigned size = 1; size < n; size *= 2) {
        Stage stage;
        for (unsigned start = 0; start < n; start += size) {
            Partition part;
            for (unsigned q = start; q < std::min(n, start + size); q++) {
                part.push_back(q);
            }
            stage.push_back(std::move(part));
        }
        spec.stages.push_back(std::move(stage));
    }
    return spec;
}

InverseSpec inverse_spec_from_json(std::string_view json_text, unsigned n) {
    using nlohmann::json;
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error &e) {
        throw ValidationError(std::string("inverse spec: ") + e.what());
    }
    if (!doc.is_object()) {
        throw ValidationError("inverse spec: expected an object");
    }
    InverseSpec spec;
    if (doc.contains("order")) {
        if (!doc["order"].is_number_unsigned()) {
            throw ValidationError("inverse spec/order: expected a positive integer");
        }
        spec.order = doc["order"].get<unsigned>();
    }
    if (doc.contains("threshold")) {
        if (!doc["threshold"].is_number()) {
            throw ValidationError("inverse spec/threshold: expected a number");
        }
        spec.threshold = doc["threshold"].get<double>();
    }
    if (doc.contains("stages")) {
        const json &st = doc["stages"];
        if (st.is_string() && st.get<std::string>() == "doubling") {
            spec.stages = InverseSpec::doubling(n).stages;
        } else if (!st.is_array()) {
            throw ValidationError("inverse spec/stages: expected a list of stages or \"doubling\"");
        } else {
            for (std::size_t s = 0; s < st.size(); s++) {
                const std::string where = "inverse spec/stages/" + std::to_string(s);
                if (!st[s].is_array()) {
                    throw ValidationError(where + ": expected a list of partitions");
                }
                Stage stage;
                for (std::size_t p = 0; p < st[s].size(); p++) {
                    const json &part = st[s][p];
                    if (!part.is_array()) {
                        throw ValidationError(where + "/" + std::to_string(p) + ": expected a list of qubits");
                    }
                    Partition out;
                    for (std::size_t i = 0; i < part.size(); i++) {
                        if (!part[i].is_number_unsigned()) {
                            throw ValidationError(where + "/" + std::to_string(p) + "/" + std::to_string(i) +
                                                  ": expected a qubit index");
                        }
                        out.push_back(part[i].get<unsigned>());
                    }
                    stage.push_back(std::move(out));
                }
                spec.stages.push_back(std::move(stage));
            }
        }
    }
    spec.validate(n);
    return spec;
}

std::string inverse_spec_to_json(const InverseSpec &spec) {
    nlohmann::ordered_json j;
    j["order"] = spec.order;
    j["threshold"] = spec.threshold;
    j["stages"] = spec.stages;
    return j.dump();
}

SignedDist walsh_exact_inverse(const SignedDist &p) {
    if (p.width() > 16) {
        throw ValidationError("walsh_exact_inverse is limited to 16 qubits");
    }
    auto spectrum = walsh_transform(p);
    for (std::size_t s = 0; s < spectrum.size(); s++) {
        if (std::abs(spectrum[s]) < 1e-12) {
            throw NonInvertibleChannelError("Walsh coefficient at " + bits_to_string(s, p.width()) +
                                            " vanishes; the channel has no convolution inverse");
        }
        spectrum[s] = 1.0 / spectrum[s];
    }
    return inverse_walsh_transform(spectrum, p.width());
}

double expectation_rescale_factor(const SignedDist &p, uint64_t support) {
    if (!p.is_probability()) {
        throw ValidationError("readout rescaling needs a probability distribution");
    }
    if (support > low_mask(p.width())) {
        throw ValidationError("observable support does not fit in the register");
    }
    double f = 0;
    for (const auto &e : p.entries()) {
        f += (std::popcount(e.mask & support) & 1) ? -e.weight : e.weight;
    }
    if (std::abs(f) < 1e-9) {
        throw NonInvertibleChannelError("readout noise erases the observable on " +
                                        bits_to_string(support, p.width()) + " (rescale factor " + format_double(f) +
                                        ")");
    }
    return f;
}

}  // namespace romit
