// SPDX-License-Identifier: Apache-2.0
//
// repstab — feedback-stability analysis for networks of interacting
// wireless repeaters
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "repstab/commands.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <functional>
#include <iostream>
#include <thread>

namespace {

struct Options {
    std::string scenario_path;
    std::string out_path;  // empty: stdout
    int threads = 0;       // 0: hardware concurrency
};

void add_common(CLI::App* cmd, Options& opt)
{
    cmd->add_option("--scenario", opt.scenario_path, "Scenario file (JSON)")->required();
    cmd->add_option("--out", opt.out_path, "Output CSV path (default: stdout)");
    cmd->add_option("--threads", opt.threads,
                    "Worker threads for frequency sweeps (results are identical for any value)");
}

int run(const Options& opt, const std::function<void(const repstab::Scenario&, std::ostream&)>& fn)
{
    repstab::Scenario sc = repstab::load_scenario(opt.scenario_path);
    sc.analysis.threads =
        opt.threads > 0 ? opt.threads : int(std::max(1u, std::thread::hardware_concurrency()));
    if (opt.out_path.empty()) {
        fn(sc, std::cout);
        return 0;
    }
    std::ofstream out(opt.out_path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot open output file " + opt.out_path);
    fn(sc, out);
    return 0;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Feedback-stability and coverage analysis for wireless repeater networks"};
    app.require_subcommand(1);

    struct Command {
        const char* name;
        const char* help;
        std::function<void(const repstab::Scenario&, std::ostream&)> fn;
    };
    const Command commands[] = {
        {"bound", "Gershgorin lower bound on the maximum stable gain", repstab::cmd_bound},
        {"sweep", "Stability measure over a gain grid", repstab::cmd_sweep},
        {"maxgain", "Estimate the maximum stable amplification gain", repstab::cmd_maxgain},
        {"coverage", "Coverage extension under power and stability constraints",
         repstab::cmd_coverage},
        {"echo", "Two-repeater time-domain echo simulation", repstab::cmd_echo},
    };

    Options opts[std::size(commands)];
    const Command* selected = nullptr;
    const Options* selected_opts = nullptr;
    for (std::size_t i = 0; i < std::size(commands); ++i) {
        CLI::App* sub = app.add_subcommand(commands[i].name, commands[i].help);
        add_common(sub, opts[i]);
        sub->callback([&, i] {
            selected = &commands[i];
            selected_opts = &opts[i];
        });
    }

    CLI11_PARSE(app, argc, argv);

    try {
        return run(*selected_opts, selected->fn);
    } catch (const repstab::ScenarioError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
