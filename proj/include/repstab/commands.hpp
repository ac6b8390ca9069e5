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

#include "repstab/scenario.hpp"

#include <ostream>

namespace repstab {

// Each command writes a complete CSV document (comment header, column
// header, rows) to `out`. Scenario problems throw ScenarioError; numerical
// failures propagate as other exceptions.

/// Gershgorin bound; with scenario.bound_sweep set, one row per
/// (spacing, cell_count) pair.
void cmd_bound(const Scenario& sc, std::ostream& out);

/// Stability measure over a log-spaced gain grid. Odd rings use the
/// circulant-eigenvalue measure, everything else the determinant measure.
void cmd_sweep(const Scenario& sc, std::ostream& out);

/// Gershgorin bound plus the estimated maximum stable gain and their ratio.
void cmd_maxgain(const Scenario& sc, std::ostream& out);

/// Coverage extension per repeater count under the power and stability
/// constraints.
void cmd_coverage(const Scenario& sc, std::ostream& out);

/// Two-repeater time-domain echo simulation.
void cmd_echo(const Scenario& sc, std::ostream& out);

}  // namespace repstab
