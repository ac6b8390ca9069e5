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

#pragma once

#include "repstab/channel.hpp"
#include "repstab/deployment.hpp"
#include "repstab/stability.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace repstab {

/// Raised for malformed or invalid scenario files (CLI exit code 1).
struct ScenarioError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct AnalysisParams {
    double alpha_min = 0.0;       // <= 0: auto, 0.1 * alpha_G
    double alpha_max = 0.0;       // <= 0: auto, 10 * alpha_G
    int n_alpha = 200;
    double eps_stab = 1e-3;       // collapse threshold (measure at alpha=0 is 1)
    double alpha_tol_rel = 1e-3;  // relative bisection tolerance on alpha
    double gamma_db = 80.0;
    bool gamma_is_power_db = true;
    double delta_max_m = 0.0;     // <= 0: default 10 * radius
    std::vector<int> coverage_counts;  // default 2,4,...,40
    int threads = 1;              // from the CLI, not the scenario file
};

struct EchoParams {
    double alpha = 0.0;
    double beta = 0.0;
    double delay_s = 0.0;
    double sample_rate_hz = 0.0;
    double duration_s = 0.0;
    std::string x1_csv;  // empty: unit impulse at t = 0
    std::string x2_csv;  // empty: all zeros
};

struct BoundSweep {
    std::vector<double> spacings_m;
    std::vector<int> cell_counts;
};

/// A fully validated analysis scenario. Module preconditions are checked at
/// parse time so commands only ever see consistent inputs.
struct Scenario {
    Deployment deployment;
    FreeSpaceLosChannel channel{2.0e9};
    FrequencyGrid grid{2.0e9, 20.0e6, 10.0e3};
    AnalysisParams analysis;
    std::optional<EchoParams> echo;
    std::optional<BoundSweep> bound_sweep;
    double ring_radius_m = 0.0;   // set for ring deployments (coverage, delta_max default)
    double cell_width_m = 0.0;    // set for grid/multicell deployments (bound sweeps)

    std::uint64_t hash = 0;       // FNV-1a of the scenario file bytes
    std::vector<std::pair<std::string, std::string>> echo_params;  // CSV header echo
};

/// Parse a scenario from JSON text. `text` is also the hash input.
Scenario parse_scenario(const std::string& text);

/// Load and parse a scenario file.
Scenario load_scenario(const std::string& path);

}  // namespace repstab
