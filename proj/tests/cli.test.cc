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

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "romit/errors.h"
#include "romit_cli.h"

namespace romit::cli {
namespace {

namespace fs = std::filesystem;

class CliTest : public ::testing::Test {
   protected:
    void SetUp() override {
        const auto *info = ::testing::UnitTest::GetInstance()->current_test_info();
        dir_ = fs::temp_directory_path() / ("romit_cli_" + std::string(info->name()) + "_" +
                                            std::to_string(::getpid()));
        fs::remove_all(dir_);
        fs::create_directories(dir_);
    }
    void TearDown() override {
        fs::remove_all(dir_);
    }

    std::string write_config(const std::string &name, const std::string &body) {
        const auto path = dir_ / name;
        std::ofstream(path) << body;
        return path.string();
    }

    int run(const std::string &args) {
        const std::string cmd = std::string(ROMIT_BINARY) + " " + args + " > " + (dir_ / "log.txt").string() +
                                " 2>&1";
        const int status = std::system(cmd.c_str());
        return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    }

    static std::string slurp(const fs::path &p) {
        std::ifstream in(p, std::ios::binary);
        std::stringstream ss;
        ss << in.rdbuf();
        return ss.str();
    }

    fs::path dir_;
};

const char *kSmallScan = R"({
  "experiment": "confusion-scan",
  "seed": 5,
  "qubits": 2,
  "shots": 2000,
  "randomizations": 10,
  "noise": [
    {"type": "amplitude_damping", "qubits": [0], "gamma": 0.05},
    {"type": "crosstalk", "qubits": [0, 1], "delta": 0.1}
  ]
})";

TEST_F(CliTest, ConfusionScanWritesOutputs) {
    const auto cfg = write_config("scan.json", kSmallScan);
    ASSERT_EQ(run("confusion-scan --config " + cfg + " --out " + (dir_ / "a").string()), kExitOk)
        << slurp(dir_ / "log.txt");
    for (const char *f : {"confusion_raw.csv", "confusion_mrc.csv", "diagnostics.json", "manifest.json"}) {
        EXPECT_TRUE(fs::exists(dir_ / "a" / f)) << f;
    }
    const auto raw = slurp(dir_ / "a" / "confusion_raw.csv");
    EXPECT_NE(raw.find("# seed: 5"), std::string::npos);
    EXPECT_NE(raw.find("# config_hash: "), std::string::npos);
}

TEST_F(CliTest, OutputsAreByteIdenticalAcrossRunsAndThreads) {
    const auto cfg = write_config("scan.json", kSmallScan);
    ASSERT_EQ(run("confusion-scan --config " + cfg + " --out " + (dir_ / "a").string() + " --threads 1"), 0);
    ASSERT_EQ(run("confusion-scan --config " + cfg + " --out " + (dir_ / "b").string() + " --threads 1"), 0);
    ASSERT_EQ(run("confusion-scan --config " + cfg + " --out " + (dir_ / "c").string() + " --threads 3"), 0);
    for (const char *f : {"confusion_raw.csv", "confusion_mrc.csv", "diagnostics.json"}) {
        const auto a = slurp(dir_ / "a" / f);
        EXPECT_EQ(a, slurp(dir_ / "b" / f)) << f;
        EXPECT_EQ(a, slurp(dir_ / "c" / f)) << f;
    }
}

TEST_F(CliTest, SeedFlagOverridesConfig) {
    const auto cfg = write_config("scan.json", kSmallScan);
    ASSERT_EQ(run("confusion-scan --config " + cfg + " --out " + (dir_ / "a").string()), 0);
    ASSERT_EQ(run("confusion-scan --config " + cfg + " --seed 6 --out " + (dir_ / "b").string()), 0);
    const auto b = slurp(dir_ / "b" / "confusion_raw.csv");
    EXPECT_NE(b.find("# seed: 6"), std::string::npos);
    EXPECT_NE(slurp(dir_ / "a" / "confusion_raw.csv"), b);
}

TEST_F(CliTest, ValidationErrorsExitTwo) {
    const auto unknown = write_config("unknown.json", R"({"experiment": "confusion-scan", "seed": 1,
        "qubits": 2, "shots": 10, "randomizations": 2, "noise": [], "colour": "blue"})");
    EXPECT_EQ(run("confusion-scan --config " + unknown + " --out " + dir_.string()), kExitValidation);
    EXPECT_NE(slurp(dir_ / "log.txt").find("colour"), std::string::npos);

    const auto mismatch = write_config("mismatch.json", R"({"experiment": "mcm-bench", "seed": 1})");
    EXPECT_EQ(run("confusion-scan --config " + mismatch), kExitValidation);

    const auto noseed = write_config("noseed.json", R"({"experiment": "confusion-scan", "qubits": 2,
        "shots": 10, "randomizations": 2, "noise": []})");
    EXPECT_EQ(run("confusion-scan --config " + noseed + " --out " + dir_.string()), kExitValidation);

    const auto range = write_config("range.json", R"({"experiment": "confusion-scan", "seed": 1,
        "qubits": 2, "shots": 10, "randomizations": 2,
        "noise": [{"type": "bit_flip", "qubits": [4], "p": 0.1}]})");
    EXPECT_EQ(run("confusion-scan --config " + range + " --out " + dir_.string()), kExitValidation);

    EXPECT_EQ(run("confusion-scan --config " + (dir_ / "missing.json").string()), kExitValidation);
    EXPECT_EQ(run("confusion-scan"), kExitValidation);
    EXPECT_EQ(run("teleport --config x.json"), kExitValidation);
    EXPECT_EQ(run("confusion-scan --config " + unknown + " --threads 0"), kExitValidation);
}

TEST_F(CliTest, NonInvertibleNoiseExitsThree) {
    const auto cfg = write_config("bad.json", R"({
      "experiment": "mrc-characterize", "seed": 3, "qubits": 2, "shots": 4000, "randomizations": 10,
      "noise": [{"type": "bit_flip", "qubits": [0], "p": 0.3}, {"type": "bit_flip", "qubits": [1], "p": 0.3}],
      "inverse": {"order": 2}
    })");
    EXPECT_EQ(run("mrc-characterize --config " + cfg + " --out " + dir_.string()), kExitNumerical)
        << slurp(dir_ / "log.txt");
}

TEST_F(CliTest, CharacterizeSelfCorrects) {
    const auto cfg = write_config("char.json", R"({
      "experiment": "mrc-characterize", "seed": 4, "qubits": 3, "shots": 20000, "randomizations": 20,
      "noise": [{"type": "amplitude_damping", "qubits": [1], "gamma": 0.1}],
      "inverse": {"order": 2}
    })");
    ASSERT_EQ(run("mrc-characterize --config " + cfg + " --out " + dir_.string()), 0) << slurp(dir_ / "log.txt");
    for (const char *f : {"error_distribution.txt", "error_distribution.json", "inverse.txt", "summary.json"}) {
        EXPECT_TRUE(fs::exists(dir_ / f)) << f;
    }
}

TEST_F(CliTest, McmBenchWithFixedInsertionProbability) {
    const auto cfg = write_config("mcm.json", R"({
      "experiment": "mcm-bench", "seed": 8, "rounds": 2, "shots": 2000,
      "modes": ["bare", "mrc+qprc"],
      "noise": {"ancilla_readout": [{"type": "bit_flip", "qubits": [0], "p": 0.02}]},
      "p1": 0.02
    })");
    ASSERT_EQ(run("mcm-bench --config " + cfg + " --out " + dir_.string()), 0) << slurp(dir_ / "log.txt");
    const auto csv = slurp(dir_ / "curves.csv");
    EXPECT_NE(csv.find("round,p_memory0,stderr,mode"), std::string::npos);
    EXPECT_NE(csv.find(",mrc+qprc"), std::string::npos);
}

TEST_F(CliTest, RunCircuitResolvesRelativeFiles) {
    fs::create_directories(dir_ / "circuits");
    std::ofstream(dir_ / "circuits" / "x.json")
        << R"({"qubits": 1, "clbits": 1, "nodes": [{"op": "x", "targets": [0]},
              {"op": "measure", "targets": [0], "slots": [0]}]})";
    const auto cfg = write_config("rc.json", R"({"experiment": "run-circuit", "seed": 1, "shots": 50,
        "circuit_file": "circuits/x.json"})");
    ASSERT_EQ(run("run-circuit --config " + cfg + " --out " + (dir_ / "o").string()), 0) << slurp(dir_ / "log.txt");
    EXPECT_NE(slurp(dir_ / "o" / "counts.csv").find("1,50"), std::string::npos);
}

TEST_F(CliTest, ShippedExampleConfigRuns) {
    ASSERT_EQ(run("run-circuit --config " + std::string(ROMIT_CONFIG_DIR) + "/run_circuit.json --out " +
                  dir_.string()),
              0)
        << slurp(dir_ / "log.txt");
}

TEST(ExitCodes, MapExceptionFamilies) {
    EXPECT_EQ(exit_code_for(ValidationError("x")), kExitValidation);
    EXPECT_EQ(exit_code_for(NonInvertibleChannelError("x")), kExitNumerical);
    EXPECT_EQ(exit_code_for(SingularMatrixError("x", 1e13)), kExitNumerical);
    EXPECT_EQ(exit_code_for(std::runtime_error("x")), kExitInternal);
}

TEST(Pearson, KnownValues) {
    const std::vector<double> x{1, 2, 3, 4};
    const std::vector<double> y{2, 4, 6, 8};
    const std::vector<double> z{4, 3, 2, 1};
    EXPECT_NEAR(pearson(x, y), 1.0, 1e-15);
    EXPECT_NEAR(pearson(x, z), -1.0, 1e-15);
}

}  // namespace
}  // namespace romit::cli
