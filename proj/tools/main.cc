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

#include <iostream>

#include "CLI11.hpp"
#include "romit_cli.h"

int main(int argc, char **argv) {
    using namespace romit::cli;
    CLI::App app{"romit: readout error mitigation experiments"};
    app.set_version_flag("--version", tool_version());
    app.require_subcommand(1);

    Options opts;
    uint64_t seed = 0;
    for (const auto &name : command_names()) {
        auto *sub = app.add_subcommand(name);
        sub->add_option("--config", opts.config_path, "experiment config (JSON)")->required();
        sub->add_option("--seed", seed, "root seed; overrides the config");
        sub->add_option("--out", opts.out_dir, "output directory")->capture_default_str();
        sub->add_option("--threads", opts.threads, "worker threads")->check(CLI::PositiveNumber);
        sub->callback([&opts, sub, &seed] {
            opts.command = sub->get_name();
            if (sub->count("--seed") > 0) {
                opts.seed = seed;
            }
        });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitValidation;
    }

    try {
        execute(opts, std::cout);
    } catch (const std::exception &e) {
        std::cerr << "romit " << opts.command << ": " << e.what() << "\n";
        return exit_code_for(e);
    }
    return kExitOk;
}
