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

#include "romit/dist_io.h"

#include <charconv>
#include <cstdio>
#include <sstream>

#include "json.hpp"

namespace romit {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) {
        s.remove_prefix(1);
    }
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
        s.remove_suffix(1);
    }
    return s;
}

double parse_double(std::string_view s, std::size_t line_no) {
    std::string tmp(trim(s));
    char *end = nullptr;
    double v = std::strtod(tmp.c_str(), &end);
    if (tmp.empty() || end != tmp.c_str() + tmp.size()) {
        throw ValidationError("line " + std::to_string(line_no) + ": cannot parse weight '" + tmp + "'");
    }
    return v;
}

}  // namespace

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string to_string(DistKind kind) {
    return kind == DistKind::kProbability ? "probability" : "quasi";
}

std::string content_hash(std::string_view bytes) {
    uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string write_dist_text(const SignedDist &d, const Metadata &header) {
    std::ostringstream out;
    out << "# width: " << d.width() << "\n";
    out << "# kind: " << to_string(d.kind()) << "\n";
    for (const auto &[k, v] : header) {
        out << "# " << k << ": " << v << "\n";
    }
    for (const auto &e : d.entries()) {
        out << bits_to_string(e.mask, d.width()) << "," << format_double(e.weight) << "\n";
    }
    return out.str();
}

ParsedDist read_dist_text(std::string_view text) {
    Metadata header;
    std::vector<SignedDist::Entry> entries;
    unsigned width = 0;
    std::size_t line_no = 0;
    while (!text.empty()) {
        auto nl = text.find('\n');
        std::string_view line = trim(text.substr(0, nl));
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        line_no++;
        if (line.empty()) {
            continue;
        }
        if (line.front() == '#') {
            auto body = trim(line.substr(1));
            auto colon = body.find(':');
            if (colon == std::string_view::npos) {
                continue;
            }
            std::string key(trim(body.substr(0, colon)));
            std::string value(trim(body.substr(colon + 1)));
            if (key == "width") {
                unsigned w = 0;
                auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), w);
                if (ec != std::errc() || ptr != value.data() + value.size()) {
                    throw ValidationError("line " + std::to_string(line_no) + ": bad width '" + value + "'");
                }
                if (width != 0 && width != w) {
                    throw ValidationError("line " + std::to_string(line_no) + ": width header disagrees with records");
                }
                width = w;
            } else if (key != "kind") {
                header.emplace_back(std::move(key), std::move(value));
            }
            continue;
        }
        auto comma = line.find(',');
        if (comma == std::string_view::npos) {
            throw ValidationError("line " + std::to_string(line_no) + ": expected 'bitstring,weight'");
        }
        auto bits = BitString::parse(trim(line.substr(0, comma)));
        if (width == 0) {
            width = bits.n;
        } else if (bits.n != width) {
            throw ValidationError(
                "line " + std::to_string(line_no) + ": bit string has " + std::to_string(bits.n) +
                " bits, expected " + std::to_string(width));
        }
        entries.push_back({bits.mask, parse_double(line.substr(comma + 1), line_no)});
    }
    if (width == 0) {
        throw ValidationError("distribution text has neither a width header nor any records");
    }
    return {SignedDist(width, std::move(entries)), std::move(header)};
}

std::string write_dist_json(const SignedDist &d, const Metadata &header) {
    nlohmann::ordered_json j;
    j["n"] = d.width();
    j["kind"] = to_string(d.kind());
    auto entries = nlohmann::ordered_json::array();
    for (const auto &e : d.entries()) {
        entries.push_back({{"bits", bits_to_string(e.mask, d.width())}, {"weight", e.weight}});
    }
    j["entries"] = std::move(entries);
    if (!header.empty()) {
        auto meta = nlohmann::ordered_json::object();
        for (const auto &[k, v] : header) {
            meta[k] = v;
        }
        j["metadata"] = std::move(meta);
    }
    return j.dump(2) + "\n";
}

ParsedDist read_dist_json(std::string_view text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error &e) {
        throw ValidationError(std::string("distribution JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("n") || !j["n"].is_number_unsigned()) {
        throw ValidationError("distribution JSON: missing unsigned field /n");
    }
    const unsigned n = j["n"].get<unsigned>();
    check_width(n);
    if (!j.contains("entries") || !j["entries"].is_array()) {
        throw ValidationError("distribution JSON: missing array field /entries");
    }
    std::vector<SignedDist::Entry> entries;
    std::size_t idx = 0;
    for (const auto &e : j["entries"]) {
        const std::string where = "/entries/" + std::to_string(idx++);
        if (!e.is_object() || !e.contains("bits") || !e["bits"].is_string() || !e.contains("weight") ||
            !e["weight"].is_number()) {
            throw ValidationError("distribution JSON: " + where + " needs string 'bits' and numeric 'weight'");
        }
        auto bits = BitString::parse(e["bits"].get<std::string>());
        if (bits.n != n) {
            throw ValidationError("distribution JSON: " + where + "/bits has the wrong width");
        }
        entries.push_back({bits.mask, e["weight"].get<double>()});
    }
    Metadata header;
    if (j.contains("metadata") && j["metadata"].is_object()) {
        for (const auto &[k, v] : j["metadata"].items()) {
            header.emplace_back(k, v.is_string() ? v.get<std::string>() : v.dump());
        }
    }
    return {SignedDist(n, std::move(entries)), std::move(header)};
}

}  // namespace romit
