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

#include "romit_cli.h"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "json.hpp"
#include "romit/parallel.h"
#include "romit/walsh.h"

namespace romit::cli {

namespace fs = std::filesystem;
using nlohmann::json;
using ojson = nlohmann::ordered_json;

std::string tool_version() {
    return "0.1.0";
}

int exit_code_for(const std::exception &e) {
    if (dynamic_cast<const ValidationError *>(&e) != nullptr) {
        return kExitValidation;
    }
    if (dynamic_cast<const NumericalError *>(&e) != nullptr) {
        return kExitNumerical;
    }
    return kExitInternal;
}

double pearson(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2) {
        throw ValidationError("pearson needs two samples of equal length >= 2");
    }
    const double n = static_cast<double>(x.size());
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < x.size(); i++) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxy = 0, sxx = 0, syy = 0;
    for (std::size_t i = 0; i < x.size(); i++) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
        syy += (y[i] - my) * (y[i] - my);
    }
    if (sxx == 0 || syy == 0) {
        return 0;
    }
    return sxy / std::sqrt(sxx * syy);
}

// ---------------------------------------------------------------------------
// Experiments.

ConfusionScanResult run_confusion_scan(const ConfusionScanConfig &cfg, uint64_t seed, unsigned threads) {
    ConfusionScanResult out;
    out.raw = build_full_confusion(cfg.model, cfg.qubits, cfg.shots, derive_seed(seed, 0), threads);
    TwirlConfig tw = TwirlConfig::from_total(cfg.shots, cfg.randomizations, derive_seed(seed, 1));
    tw.threads = threads;
    out.twirled = twirled_confusion(cfg.model, cfg.qubits, tw);
    out.raw_diag = diagnostics(out.raw);
    out.mrc_diag = diagnostics(out.twirled);
    out.sigma = std::sqrt(0.25 / static_cast<double>(cfg.shots));
    return out;
}

CharacterizeResult run_characterize(const CharacterizeConfig &cfg, uint64_t seed, unsigned threads) {
    TwirlConfig tw = TwirlConfig::from_total(cfg.shots, cfg.randomizations, seed);
    tw.threads = threads;
    CharacterizeResult out;
    out.p_hat = characterize_error_distribution(cfg.model, cfg.qubits, tw, cfg.basis);
    if (cfg.inverse) {
        const InverseSpec &spec = *cfg.inverse;
        out.inverse = spec.stages.empty() ? kth_order_inverse(out.p_hat, spec.order, spec.algebra())
                                          : partitioned_inverse(out.p_hat, spec);
        out.self_corrected = apply_correction(out.p_hat, *out.inverse, spec.algebra());
    }
    return out;
}

namespace {

struct BenchCircuit {
    std::string family;
    Circuit prep;
};

BenchCircuit make_bench_circuit(unsigned n, bool haar, Rng &rng) {
    BenchCircuit out{haar ? "haar" : "ihx", Circuit(n, n)};
    std::uniform_int_distribution<int> pick(0, 2);
    for (unsigned q = 0; q < n; q++) {
        if (haar) {
            out.prep.gate("su2", gates::haar_su2(rng), {q});
        } else {
            const int g = pick(rng);
            if (g == 1) {
                out.prep.gate("h", {q});
            } else if (g == 2) {
                out.prep.gate("x", {q});
            }
        }
    }
    return out;
}

ClipPolicy other_policy(ClipPolicy p) {
    return p == ClipPolicy::kKeep ? ClipPolicy::kClipRenormalize : ClipPolicy::kKeep;
}

}  // namespace

QprcBenchResult run_qprc_bench(const QprcBenchConfig &cfg, uint64_t seed, unsigned threads) {
    const unsigned n = cfg.qubits;
    QprcBenchResult out;
    TwirlConfig cal = TwirlConfig::from_total(cfg.calibration_shots, cfg.randomizations, derive_seed(seed, 0));
    cal.threads = threads;
    out.p_hat = characterize_error_distribution(cfg.model, n, cal);
    out.local = build_local_confusions(cfg.model, n, cfg.calibration_shots, derive_seed(seed, 1), threads);
    const SignedDist q = cfg.inverse.stages.empty()
                             ? kth_order_inverse(out.p_hat, cfg.inverse.order, cfg.inverse.algebra())
                             : partitioned_inverse(out.p_hat, cfg.inverse);

    const std::size_t total = 2 * std::size_t{cfg.circuits_per_family};
    out.scores.resize(total);
    parallel_for(total, threads, [&](std::size_t i) {
        const uint64_t stream = derive_seed(seed, 2 + i);
        Rng gen = make_rng(stream, 0);
        const bool haar = i >= cfg.circuits_per_family;
        const BenchCircuit bc = make_bench_circuit(n, haar, gen);
        const SignedDist ideal =
            output_distribution(with_terminal_measurement(bc.prep, MeasurementModel::ideal(n)), 1e-15);

        TwirlConfig tw = TwirlConfig::from_total(cfg.shots, cfg.randomizations, derive_seed(stream, 1));
        const SignedDist twirled = from_counts(n, twirled_measure(bc.prep, cfg.model, tw));
        const SignedDist raw = from_counts(n, plain_measure(bc.prep, cfg.model, cfg.shots, derive_seed(stream, 2)));

        const SignedDist lrc = correct_local(out.local, raw);
        const SignedDist qprc = apply_correction(twirled, q, cfg.inverse.algebra());

        CircuitScore &s = out.scores[i];
        s.index = static_cast<unsigned>(i);
        s.family = bc.family;
        s.entropy = shannon_entropy(ideal.pruned(1e-15));
        s.tvd_raw = tvd(raw, ideal);
        s.tvd_lrc = tvd(clip_to_probability(lrc, cfg.policy).dist, ideal);
        s.tvd_qprc = tvd(clip_to_probability(qprc, cfg.policy).dist, ideal);
        s.tvd_lrc_other = tvd(clip_to_probability(lrc, other_policy(cfg.policy)).dist, ideal);
        s.tvd_qprc_other = tvd(clip_to_probability(qprc, other_policy(cfg.policy)).dist, ideal);
    });

    std::size_t wins = 0, wins_other = 0;
    std::vector<double> tq, ent;
    for (const auto &s : out.scores) {
        wins += s.tvd_qprc < s.tvd_lrc;
        wins_other += s.tvd_qprc_other < s.tvd_lrc_other;
        tq.push_back(s.tvd_qprc);
        ent.push_back(s.entropy);
    }
    out.win_rate = static_cast<double>(wins) / static_cast<double>(total);
    out.win_rate_other = static_cast<double>(wins_other) / static_cast<double>(total);
    out.pearson_qprc_entropy = total >= 2 ? pearson(tq, ent) : 0.0;
    return out;
}

std::vector<McmCurve> run_mcm_bench(const McmBenchConfig &cfg, uint64_t seed, unsigned threads) {
    std::vector<McmCurve> curves;
    for (std::size_t m = 0; m < cfg.modes.size(); m++) {
        McmExperiment exp;
        exp.rounds = cfg.rounds;
        exp.mode = cfg.modes[m];
        exp.noise = cfg.noise;
        exp.shots = cfg.shots;
        exp.seed = derive_seed(seed, m);
        exp.p1 = cfg.p1;
        exp.characterization = TwirlConfig::from_total(cfg.characterization_shots, cfg.randomizations, 0);
        exp.target_precision = cfg.target_precision;
        exp.threads = threads;
        curves.push_back(run_mcm_experiment(exp));
    }
    return curves;
}

// ---------------------------------------------------------------------------
// Config parsing. Errors name the JSON pointer of the offending field.

namespace {

[[noreturn]] void bad(const std::string &path, const std::string &msg) {
    throw ValidationError("config " + (path.empty() ? std::string("/") : path) + ": " + msg);
}

class Node {
   public:
    Node(const json &j, std::string path) : j_(j), path_(std::move(path)) {
        if (!j_.is_object()) {
            bad(path_, "expected an object");
        }
    }

    bool has(const char *key) const {
        return j_.contains(key);
    }
    const json &raw(const char *key) const {
        return j_.at(key);
    }
    std::string path(const char *key) const {
        return path_ + "/" + key;
    }

    void allow_only(std::initializer_list<const char *> keys) const {
        std::set<std::string> ok(keys.begin(), keys.end());
        for (const auto &[k, v] : j_.items()) {
            if (!ok.count(k)) {
                std::string list;
                for (const auto &o : ok) {
                    list += (list.empty() ? "" : ", ") + o;
                }
                bad(path_ + "/" + k, "unknown field (allowed: " + list + ")");
            }
        }
    }

    uint64_t uint(const char *key, std::optional<uint64_t> def, uint64_t lo, uint64_t hi) const {
        if (!has(key)) {
            if (!def) {
                bad(path(key), "required field is missing");
            }
            return *def;
        }
        const json &v = j_.at(key);
        if (!v.is_number_unsigned() || v.get<uint64_t>() < lo || v.get<uint64_t>() > hi) {
            bad(path(key), "expected an integer in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
        }
        return v.get<uint64_t>();
    }

    double number(const char *key, std::optional<double> def, double lo, double hi) const {
        if (!has(key)) {
            if (!def) {
                bad(path(key), "required field is missing");
            }
            return *def;
        }
        const json &v = j_.at(key);
        if (!v.is_number() || !(v.get<double>() >= lo && v.get<double>() <= hi)) {
            bad(path(key), "expected a number in [" + format_double(lo) + ", " + format_double(hi) + "]");
        }
        return v.get<double>();
    }

    std::string string(const char *key, std::optional<std::string> def) const {
        if (!has(key)) {
            if (!def) {
                bad(path(key), "required field is missing");
            }
            return *def;
        }
        if (!j_.at(key).is_string()) {
            bad(path(key), "expected a string");
        }
        return j_.at(key).get<std::string>();
    }

    Node child(const char *key) const {
        return Node(j_.at(key), path(key));
    }

   private:
    const json &j_;
    std::string path_;
};

MeasurementModel model_field(const Node &node, const char *key, unsigned arity) {
    if (!node.has(key)) {
        return MeasurementModel::ideal(arity);
    }
    return MeasurementModel(noise_from_json(node.raw(key).dump(), arity, "config " + node.path(key)));
}

NoiseChannel channel_field(const Node &node, const char *key) {
    if (!node.has(key)) {
        return NoiseChannel::identity(1);
    }
    return noise_from_json(node.raw(key).dump(), 1, "config " + node.path(key));
}

std::string read_file(const fs::path &p, const std::string &what) {
    std::ifstream in(p, std::ios::binary);
    if (!in) {
        throw ValidationError(what + " '" + p.string() + "' cannot be read");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

fs::path resolve(const fs::path &base, const std::string &rel, const std::string &where) {
    fs::path p(rel);
    if (p.is_relative()) {
        p = base / p;
    }
    if (!fs::exists(p)) {
        bad(where, "referenced file '" + p.string() + "' does not exist");
    }
    return p;
}

InverseSpec inverse_field(const Node &node, const char *key, unsigned n, const fs::path &base, InverseSpec def) {
    if (!node.has(key)) {
        return def;
    }
    const json &v = node.raw(key);
    try {
        if (v.is_string()) {
            return inverse_spec_from_json(read_file(resolve(base, v.get<std::string>(), node.path(key)), "inverse spec"), n);
        }
        return inverse_spec_from_json(v.dump(), n);
    } catch (const ValidationError &e) {
        bad(node.path(key), e.what());
    }
}

struct LoadedConfig {
    json doc;
    std::string text;
    std::string hash;
    uint64_t seed = 0;
    fs::path base;
};

LoadedConfig load_config(const Options &opts) {
    LoadedConfig c;
    c.text = read_file(opts.config_path, "config file");
    c.hash = content_hash(c.text);
    c.base = fs::path(opts.config_path).parent_path();
    try {
        c.doc = json::parse(c.text);
    } catch (const json::parse_error &e) {
        throw ValidationError("config: " + std::string(e.what()));
    }
    Node root(c.doc, "");
    if (root.has("experiment") && root.string("experiment", std::nullopt) != opts.command) {
        bad("/experiment", "config is for '" + root.string("experiment", std::nullopt) + "' but the command is '" +
                               opts.command + "'");
    }
    if (opts.seed) {
        c.seed = *opts.seed;
    } else if (root.has("seed")) {
        c.seed = root.uint("seed", std::nullopt, 0, UINT64_MAX);
    } else {
        bad("/seed", "a seed is required (set it in the config or pass --seed)");
    }
    return c;
}

// ---------------------------------------------------------------------------
// Output.

struct OutputSet {
    std::string command;
    std::string config_hash;
    uint64_t seed = 0;
    std::vector<std::pair<std::string, std::string>> files;

    Metadata metadata() const {
        return {{"tool", "romit " + tool_version()},
                {"command", command},
                {"config_hash", config_hash},
                {"seed", std::to_string(seed)}};
    }
    ojson metadata_json() const {
        ojson m = ojson::object();
        for (const auto &[k, v] : metadata()) {
            m[k] = v;
        }
        return m;
    }
    std::string csv_header() const {
        std::string s;
        for (const auto &[k, v] : metadata()) {
            s += "# " + k + ": " + v + "\n";
        }
        return s;
    }
    void add(std::string name, std::string body) {
        files.emplace_back(std::move(name), std::move(body));
    }
};

ojson diag_json(const ConfusionDiagnostics &d) {
    ojson j;
    j["diag_spread"] = d.diag_spread;
    j["asymmetry"] = d.asymmetry;
    j["xor_fit_residual"] = d.xor_fit_residual;
    return j;
}

void cmd_confusion_scan(const LoadedConfig &c, unsigned threads, OutputSet &out) {
    Node root(c.doc, "");
    root.allow_only({"experiment", "seed", "qubits", "shots", "randomizations", "noise"});
    ConfusionScanConfig cfg;
    cfg.qubits = static_cast<unsigned>(root.uint("qubits", std::nullopt, 1, kMaxFullScanWidth));
    cfg.shots = root.uint("shots", std::nullopt, 1, uint64_t{1} << 40);
    cfg.randomizations = static_cast<unsigned>(root.uint("randomizations", 100, 1, 1u << 20));
    if (cfg.shots < cfg.randomizations) {
        bad("/shots", "need at least one shot per randomization");
    }
    cfg.model = model_field(root, "noise", cfg.qubits);
    const auto r = run_confusion_scan(cfg, c.seed, threads);

    Metadata raw_meta = out.metadata();
    raw_meta.emplace_back("model", cfg.model.description());
    raw_meta.emplace_back("twirl", "none");
    raw_meta.emplace_back("shots_per_prep", std::to_string(cfg.shots));
    Metadata mrc_meta = raw_meta;
    mrc_meta[mrc_meta.size() - 2] = {"twirl", "mrc K=" + std::to_string(cfg.randomizations)};
    out.add("confusion_raw.csv", write_confusion_csv(r.raw, raw_meta));
    out.add("confusion_mrc.csv", write_confusion_csv(r.twirled, mrc_meta));

    ojson j;
    j["metadata"] = out.metadata_json();
    j["qubits"] = cfg.qubits;
    j["shots_per_prep"] = cfg.shots;
    j["randomizations"] = cfg.randomizations;
    j["sigma_binomial_max"] = r.sigma;
    j["raw"] = diag_json(r.raw_diag);
    j["mrc"] = diag_json(r.mrc_diag);
    j["condition_number_raw"] = condition_number(r.raw);
    j["condition_number_mrc"] = condition_number(r.twirled);
    out.add("diagnostics.json", j.dump(2) + "\n");
}

void cmd_mrc_characterize(const LoadedConfig &c, unsigned threads, OutputSet &out) {
    Node root(c.doc, "");
    root.allow_only({"experiment", "seed", "qubits", "shots", "randomizations", "basis", "noise", "inverse"});
    CharacterizeConfig cfg;
    cfg.qubits = static_cast<unsigned>(root.uint("qubits", std::nullopt, 1, kMaxSimQubits));
    cfg.shots = root.uint("shots", std::nullopt, 1, uint64_t{1} << 40);
    cfg.randomizations = static_cast<unsigned>(root.uint("randomizations", 100, 1, 1u << 20));
    if (cfg.shots < cfg.randomizations) {
        bad("/shots", "need at least one shot per randomization");
    }
    if (root.has("basis")) {
        try {
            const auto b = BitString::parse(root.string("basis", std::nullopt));
            if (b.n != cfg.qubits) {
                bad("/basis", "bit string width does not match qubits");
            }
            cfg.basis = b.mask;
        } catch (const ValidationError &e) {
            bad("/basis", e.what());
        }
    }
    cfg.model = model_field(root, "noise", cfg.qubits);
    if (root.has("inverse")) {
        cfg.inverse = inverse_field(root, "inverse", cfg.qubits, c.base, {});
    }
    const auto r = run_characterize(cfg, c.seed, threads);

    Metadata meta = out.metadata();
    meta.emplace_back("model", cfg.model.description());
    meta.emplace_back("model_hash", content_hash(cfg.model.description()));
    meta.emplace_back("randomizations", std::to_string(cfg.randomizations));
    meta.emplace_back("shots", std::to_string(cfg.shots / cfg.randomizations * cfg.randomizations));
    meta.emplace_back("basis", bits_to_string(cfg.basis, cfg.qubits));
    const std::string p_text = write_dist_text(r.p_hat, meta);
    out.add("error_distribution.txt", p_text);
    out.add("error_distribution.json", write_dist_json(r.p_hat, meta));

    ojson summary;
    summary["metadata"] = out.metadata_json();
    summary["p0"] = r.p_hat.weight(0);
    summary["support_size"] = r.p_hat.support_size();
    if (r.inverse) {
        Metadata imeta = out.metadata();
        imeta.emplace_back("source_hash", content_hash(p_text));
        imeta.emplace_back("spec", inverse_spec_to_json(*cfg.inverse));
        out.add("inverse.txt", write_dist_text(*r.inverse, imeta));
        summary["inverse_support_size"] = r.inverse->support_size();
        summary["self_corrected_p0"] = r.self_corrected->weight(0);
        summary["self_corrected_off_zero_mass"] = off_zero_mass(*r.self_corrected);
    }
    out.add("summary.json", summary.dump(2) + "\n");
}

void cmd_qprc_bench(const LoadedConfig &c, unsigned threads, OutputSet &out) {
    Node root(c.doc, "");
    root.allow_only({"experiment", "seed", "qubits", "circuits_per_family", "shots", "randomizations",
                     "calibration_shots", "inverse", "clip_policy", "noise"});
    QprcBenchConfig cfg;
    cfg.qubits = static_cast<unsigned>(root.uint("qubits", std::nullopt, 1, kMaxSimQubits));
    cfg.circuits_per_family = static_cast<unsigned>(root.uint("circuits_per_family", 100, 1, 100000));
    cfg.shots = root.uint("shots", std::nullopt, 1, uint64_t{1} << 40);
    cfg.randomizations = static_cast<unsigned>(root.uint("randomizations", 100, 1, 1u << 20));
    cfg.calibration_shots = root.uint("calibration_shots", cfg.calibration_shots, 1, uint64_t{1} << 40);
    if (cfg.shots < cfg.randomizations || cfg.calibration_shots < cfg.randomizations) {
        bad("/shots", "need at least one shot per randomization");
    }
    cfg.inverse = inverse_field(root, "inverse", cfg.qubits, c.base, InverseSpec{2, 1e-10, {}});
    try {
        cfg.policy = parse_clip_policy(root.string("clip_policy", "clip-renormalize"));
    } catch (const ValidationError &e) {
        bad("/clip_policy", e.what());
    }
    cfg.model = model_field(root, "noise", cfg.qubits);
    const auto r = run_qprc_bench(cfg, c.seed, threads);

    const std::string pol = to_string(cfg.policy);
    const std::string other = to_string(other_policy(cfg.policy));
    std::ostringstream csv;
    csv << out.csv_header() << "# model: " << cfg.model.description() << "\n";
    csv << "index,family,entropy,tvd_raw,tvd_lrc_" << pol << ",tvd_qprc_" << pol << ",tvd_lrc_" << other
        << ",tvd_qprc_" << other << "\n";
    for (const auto &s : r.scores) {
        csv << s.index << "," << s.family << "," << format_double(s.entropy) << "," << format_double(s.tvd_raw)
            << "," << format_double(s.tvd_lrc) << "," << format_double(s.tvd_qprc) << ","
            << format_double(s.tvd_lrc_other) << "," << format_double(s.tvd_qprc_other) << "\n";
    }
    out.add("per_circuit.csv", csv.str());

    double mean_lrc = 0, mean_qprc = 0, mean_raw = 0;
    for (const auto &s : r.scores) {
        mean_lrc += s.tvd_lrc;
        mean_qprc += s.tvd_qprc;
        mean_raw += s.tvd_raw;
    }
    const double nc = static_cast<double>(r.scores.size());
    ojson j;
    j["metadata"] = out.metadata_json();
    j["qubits"] = cfg.qubits;
    j["circuits"] = r.scores.size();
    j["shots_per_circuit"] = cfg.shots;
    j["inverse"] = json::parse(inverse_spec_to_json(cfg.inverse));
    j["clip_policy"] = pol;
    j["win_rate"] = r.win_rate;
    j["win_rate_" + other] = r.win_rate_other;
    j["pearson_tvd_qprc_entropy"] = r.pearson_qprc_entropy;
    j["mean_tvd_raw"] = mean_raw / nc;
    j["mean_tvd_lrc"] = mean_lrc / nc;
    j["mean_tvd_qprc"] = mean_qprc / nc;
    j["p_hat_p0"] = r.p_hat.weight(0);
    out.add("summary.json", j.dump(2) + "\n");
}

void cmd_mcm_bench(const LoadedConfig &c, unsigned threads, OutputSet &out) {
    Node root(c.doc, "");
    root.allow_only({"experiment", "seed", "rounds", "shots", "modes", "noise", "p1", "randomizations",
                     "characterization_shots", "target_precision"});
    McmBenchConfig cfg;
    cfg.rounds = static_cast<unsigned>(root.uint("rounds", std::nullopt, 1, kMaxProtectionRounds));
    cfg.shots = root.uint("shots", std::nullopt, 1, uint64_t{1} << 40);
    if (root.has("modes")) {
        const json &m = root.raw("modes");
        if (!m.is_array() || m.empty()) {
            bad("/modes", "expected a non-empty list of \"bare\", \"mrc\", \"mrc+qprc\"");
        }
        cfg.modes.clear();
        for (std::size_t i = 0; i < m.size(); i++) {
            if (!m[i].is_string()) {
                bad("/modes/" + std::to_string(i), "expected a mode name");
            }
            try {
                cfg.modes.push_back(parse_protection_mode(m[i].get<std::string>()));
            } catch (const ValidationError &e) {
                bad("/modes/" + std::to_string(i), e.what());
            }
        }
    }
    if (root.has("noise")) {
        Node noise = root.child("noise");
        noise.allow_only({"ancilla_readout", "memory_idle", "memory_readout"});
        cfg.noise.ancilla_readout = model_field(noise, "ancilla_readout", 1);
        cfg.noise.memory_idle = channel_field(noise, "memory_idle");
        cfg.noise.memory_readout = model_field(noise, "memory_readout", 1);
    }
    cfg.randomizations = static_cast<unsigned>(root.uint("randomizations", 100, 1, 1u << 20));
    cfg.characterization_shots = root.uint("characterization_shots", cfg.characterization_shots, 1, uint64_t{1} << 40);
    if (cfg.characterization_shots < cfg.randomizations) {
        bad("/characterization_shots", "need at least one shot per randomization");
    }
    cfg.target_precision = root.number("target_precision", 0.0, 0.0, 1.0);
    std::string p1_source = "characterized";
    if (root.has("p1")) {
        const json &p = root.raw("p1");
        if (p.is_number()) {
            cfg.p1 = root.number("p1", std::nullopt, 0.0, 0.5);
            if (*cfg.p1 >= 0.5) {
                bad("/p1", "must be below 1/2");
            }
            p1_source = "manual";
        } else if (p.is_string() && p.get<std::string>() == "characterize") {
            p1_source = "characterized";
        } else if (p.is_object() && p.contains("from_file") && p["from_file"].is_string()) {
            const auto path = resolve(c.base, p["from_file"].get<std::string>(), "/p1/from_file");
            SignedDist d;
            try {
                d = read_dist_text(read_file(path, "characterization file")).dist;
            } catch (const ValidationError &e) {
                bad("/p1/from_file", e.what());
            }
            if (d.width() != 1) {
                bad("/p1/from_file", "expected a one-qubit error distribution");
            }
            cfg.p1 = 1.0 - d.weight(0);
            p1_source = "file:" + p["from_file"].get<std::string>();
        } else {
            bad("/p1", "expected a number, \"characterize\" or {\"from_file\": path}");
        }
    }
    const auto curves = run_mcm_bench(cfg, c.seed, threads);

    std::ostringstream csv;
    csv << out.csv_header() << "# ancilla_readout: " << cfg.noise.ancilla_readout.description() << "\n";
    csv << "# memory_idle: " << cfg.noise.memory_idle.label() << "\n";
    csv << "round,p_memory0,stderr,mode\n";
    for (const auto &curve : curves) {
        for (const auto &pt : curve.points) {
            csv << pt.rounds << "," << format_double(pt.p_memory0) << "," << format_double(pt.stderr_) << ","
                << to_string(curve.mode) << "\n";
        }
    }
    out.add("curves.csv", csv.str());

    ojson j;
    j["metadata"] = out.metadata_json();
    j["rounds"] = cfg.rounds;
    j["shots"] = cfg.shots;
    auto modes = ojson::object();
    for (const auto &curve : curves) {
        ojson m;
        if (curve.p1) {
            m["p1"] = *curve.p1;
            m["p1_source"] = p1_source;
            m["compensation"] = "per-round factor 1/(1-2 p1), multiplied over rounds";
        }
        auto pts = ojson::array();
        for (const auto &pt : curve.points) {
            pts.push_back({{"round", pt.rounds},
                           {"p_memory0", pt.p_memory0},
                           {"stderr", pt.stderr_},
                           {"shots", pt.shots},
                           {"effective_shots", pt.effective_shots}});
        }
        m["points"] = std::move(pts);
        m["warnings"] = curve.warnings;
        modes[to_string(curve.mode)] = std::move(m);
    }
    j["modes"] = std::move(modes);
    out.add("summary.json", j.dump(2) + "\n");
}

void cmd_run_circuit(const LoadedConfig &c, unsigned, OutputSet &out) {
    Node root(c.doc, "");
    root.allow_only({"experiment", "seed", "shots", "circuit", "circuit_file"});
    const uint64_t shots = root.uint("shots", std::nullopt, 1, uint64_t{1} << 40);
    if (root.has("circuit") == root.has("circuit_file")) {
        bad("/circuit", "give exactly one of 'circuit' (inline) or 'circuit_file'");
    }
    std::string text;
    if (root.has("circuit")) {
        text = root.raw("circuit").dump();
    } else {
        text = read_file(resolve(c.base, root.string("circuit_file", std::nullopt), "/circuit_file"), "circuit file");
    }
    const Circuit circuit = circuit_from_json(text);
    const auto result = run_circuit(circuit, shots, c.seed);
    const unsigned width = static_cast<unsigned>(circuit.output_slots().size());

    std::ostringstream csv;
    csv << out.csv_header() << "bits,count\n";
    for (const auto &[x, k] : result.counts) {
        csv << bits_to_string(x, width) << "," << k << "\n";
    }
    out.add("counts.csv", csv.str());
    out.add("distribution.txt", write_dist_text(from_counts(width, result.counts), out.metadata()));
}

using Command = void (*)(const LoadedConfig &, unsigned, OutputSet &);

const std::map<std::string, Command> &commands() {
    static const std::map<std::string, Command> table = {
        {"confusion-scan", cmd_confusion_scan},
        {"mrc-characterize", cmd_mrc_characterize},
        {"qprc-bench", cmd_qprc_bench},
        {"mcm-bench", cmd_mcm_bench},
        {"run-circuit", cmd_run_circuit},
    };
    return table;
}

}  // namespace

std::vector<std::string> command_names() {
    std::vector<std::string> out;
    for (const auto &[k, v] : commands()) {
        out.push_back(k);
    }
    return out;
}

std::vector<std::string> execute(const Options &opts, std::ostream &log) {
    const auto it = commands().find(opts.command);
    if (it == commands().end()) {
        throw ValidationError("unknown command '" + opts.command + "'");
    }
    if (opts.threads < 1) {
        throw ValidationError("--threads must be at least 1");
    }
    const auto start = std::chrono::steady_clock::now();
    const LoadedConfig config = load_config(opts);
    OutputSet out{opts.command, config.hash, config.seed, {}};
    it->second(config, opts.threads, out);
    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    fs::create_directories(opts.out_dir);
    ojson manifest;
    manifest["metadata"] = out.metadata_json();
    manifest["threads"] = opts.threads;
    manifest["wall_time_seconds"] = wall;
    auto files = ojson::array();
    std::vector<std::string> names;
    for (const auto &[name, body] : out.files) {
        const fs::path p = fs::path(opts.out_dir) / name;
        std::ofstream f(p, std::ios::binary);
        f << body;
        if (!f) {
            throw std::runtime_error("cannot write '" + p.string() + "'");
        }
        files.push_back({{"name", name}, {"hash", content_hash(body)}});
        names.push_back(name);
        log << "wrote " << p.string() << "\n";
    }
    manifest["files"] = std::move(files);
    {
        const fs::path p = fs::path(opts.out_dir) / "manifest.json";
        std::ofstream f(p, std::ios::binary);
        f << manifest.dump(2) << "\n";
        if (!f) {
            throw std::runtime_error("cannot write '" + p.string() + "'");
        }
        names.push_back("manifest.json");
    }
    return names;
}

}  // namespace romit::cli
