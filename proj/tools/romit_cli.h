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

#ifndef ROMIT_TOOLS_ROMIT_CLI_H
#define ROMIT_TOOLS_ROMIT_CLI_H

#include <exception>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "romit/confusion.h"
#include "romit/mcm.h"
#include "romit/mrc.h"
#include "romit/qprc.h"

namespace romit::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInternal = 1;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitNumerical = 3;

std::string tool_version();

/// Maps an exception to the process exit code.
int exit_code_for(const std::exception &e);

struct ConfusionScanConfig {
    unsigned qubits = 3;
    uint64_t shots = 100000;  // per preparation
    unsigned randomizations = 100;
    MeasurementModel model = MeasurementModel::ideal(3);
};

struct ConfusionScanResult {
    ConfusionMatrix raw;
    ConfusionMatrix twirled;
    ConfusionDiagnostics raw_diag;
    ConfusionDiagnostics mrc_diag;
    /// Largest binomial standard error of a single entry, sqrt(1/4 / shots).
    double sigma = 0;
};

ConfusionScanResult run_confusion_scan(const ConfusionScanConfig &cfg, uint64_t seed, unsigned threads);

struct CharacterizeConfig {
    unsigned qubits = 8;
    uint64_t shots = 100000;  // total over all randomizations
    unsigned randomizations = 100;
    uint64_t basis = 0;
    MeasurementModel model = MeasurementModel::ideal(8);
    std::optional<InverseSpec> inverse;
};

struct CharacterizeResult {
    SignedDist p_hat;
    std::optional<SignedDist> inverse;
    /// p_hat (+) inverse: the characterization corrected by its own inverse.
    std::optional<SignedDist> self_corrected;
};

CharacterizeResult run_characterize(const CharacterizeConfig &cfg, uint64_t seed, unsigned threads);

struct QprcBenchConfig {
    unsigned qubits = 6;
    unsigned circuits_per_family = 100;
    uint64_t shots = 20000;  // per circuit and method
    unsigned randomizations = 100;
    uint64_t calibration_shots = 200000;
    InverseSpec inverse = InverseSpec{2, 1e-10, {}};
    ClipPolicy policy = ClipPolicy::kClipRenormalize;
    MeasurementModel model = MeasurementModel::ideal(6);
};

struct CircuitScore {
    unsigned index = 0;
    std::string family;  // "ihx" or "haar"
    double entropy = 0;
    double tvd_raw = 0;
    double tvd_lrc = 0;        // under the configured policy
    double tvd_qprc = 0;       // under the configured policy
    double tvd_lrc_other = 0;  // under the other policy (keep <-> clip-renormalize)
    double tvd_qprc_other = 0;
};

struct QprcBenchResult {
    std::vector<CircuitScore> scores;
    SignedDist p_hat;
    LocalConfusionSet local;
    double win_rate = 0;
    double win_rate_other = 0;
    double pearson_qprc_entropy = 0;
};

/// Substreams: derive_seed(seed, 0) characterizes p_hat, derive_seed(seed, 1)
/// runs the local scans, circuit i uses derive_seed(seed, 2 + i).
QprcBenchResult run_qprc_bench(const QprcBenchConfig &cfg, uint64_t seed, unsigned threads);

struct McmBenchConfig {
    unsigned rounds = 10;
    uint64_t shots = 200000;  // per mode and round count
    std::vector<ProtectionMode> modes = {ProtectionMode::kBare, ProtectionMode::kMrc, ProtectionMode::kMrcQprc};
    McmNoise noise;
    std::optional<double> p1;
    unsigned randomizations = 100;
    uint64_t characterization_shots = 200000;
    double target_precision = 0;
};

/// Mode m runs with seed derive_seed(seed, m).
std::vector<McmCurve> run_mcm_bench(const McmBenchConfig &cfg, uint64_t seed, unsigned threads);

double pearson(std::span<const double> x, std::span<const double> y);

struct Options {
    std::string command;
    std::string config_path;
    std::optional<uint64_t> seed;
    std::string out_dir = "romit-out";
    unsigned threads = 1;
};

/// Validates the config, runs the command and writes its outputs plus
/// manifest.json into opts.out_dir. Returns the written file names.
std::vector<std::string> execute(const Options &opts, std::ostream &log);

std::vector<std::string> command_names();

}  // namespace romit::cli

#endif
