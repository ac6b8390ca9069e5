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
#include "repstab/stability.hpp"

#include <Eigen/Dense>

#include <vector>

namespace repstab {

/// Distances L_1..L_K from the repeaters of an even ring (count = 2K,
/// radius_m) to a destination delta_m beyond the cell edge, equidistant
/// from the two closest repeaters. Each L_k occurs with multiplicity 2.
Eigen::VectorXd destination_distances(int count, double radius_m, double delta_m);

/// Minimum amplification gain for the repeated signal to restore edge-of-
/// cell received power at distance radius + delta from the source:
/// alpha = sqrt((beta(R) - beta(R + delta)) / (2 beta(R) sum_k beta(L_k))).
/// Zero at delta = 0 and strictly increasing in delta.
double required_gain(int count, double radius_m, double delta_m, const ChannelModel& ch);

/// Inverse of required_gain by bisection on [0, delta_max_m]: the unique
/// extension achievable with gain alpha, or delta_max_m if even that is
/// achievable. tol_m is the bisection bracket width.
double achieved_extension(int count, double radius_m, double alpha, const ChannelModel& ch,
                          double delta_max_m, double tol_m = 1e-3);

enum class CoverageLimit { power, stability };

const char* to_string(CoverageLimit limit);

struct CoverageRecord {
    int count = 0;
    double alpha_g = 0.0;
    double alpha_power = 0.0;
    double alpha_used = 0.0;
    CoverageLimit limit = CoverageLimit::power;
    double delta_m = 0.0;
};

/// For each even count: alpha_G of the ring (numerically, from the distance
/// matrix), the power-constrained gain alpha_power = 10^(gamma_db/20), and
/// the extension achieved with alpha = min of the two.
/// delta_max_m <= 0 selects the default bracket 10 * radius_m.
std::vector<CoverageRecord> coverage_curve(const std::vector<int>& counts, double radius_m,
                                           double gamma_db, const ChannelModel& ch,
                                           const FrequencyGrid& grid,
                                           double delta_max_m = 0.0);

}  // namespace repstab
