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

#include "repstab/coverage.hpp"

#include "repstab/deployment.hpp"
#include "repstab/numerics.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace repstab {

namespace {

void check_even_count(int count, const char* who)
{
    if (count < 2 || count % 2 != 0)
        throw std::invalid_argument(std::string(who) + ": repeater count must be even and >= 2");
}

}  // namespace

Eigen::VectorXd destination_distances(int count, double radius_m, double delta_m)
{
    check_even_count(count, "destination_distances");
    if (!(radius_m > 0.0))
        throw std::invalid_argument("destination_distances: radius must be > 0");
    if (!(delta_m >= 0.0))
        throw std::invalid_argument("destination_distances: delta must be >= 0");
    const int half = count / 2;
    Eigen::VectorXd lengths(half);
    for (int k = 1; k <= half; ++k) {
        const double angle = double(2 * k - 1) * std::numbers::pi / double(2 * count);
        const double chord = 2.0 * radius_m * std::sin(angle);        // D_k
        const double theta = angle + std::numbers::pi / 2.0;          // angle at the cell edge
        lengths(k - 1) = std::sqrt(delta_m * delta_m + chord * chord
                                   - 2.0 * delta_m * chord * std::cos(theta));
    }
    return lengths;
}

double required_gain(int count, double radius_m, double delta_m, const ChannelModel& ch)
{
    check_even_count(count, "required_gain");
    if (!(delta_m >= 0.0))
        throw std::invalid_argument("required_gain: delta must be >= 0");
    if (delta_m == 0.0)
        return 0.0;
    const Eigen::VectorXd lengths = destination_distances(count, radius_m, delta_m);
    double repeated_path = 0.0;  // sum_k beta(L_k); multiplicity 2 appears as the factor below
    for (Eigen::Index k = 0; k < lengths.size(); ++k)
        repeated_path += ch.path_gain(lengths(k));
    const double beta_edge = ch.path_gain(radius_m);
    const double beta_dest = ch.path_gain(radius_m + delta_m);
    return std::sqrt((beta_edge - beta_dest) / (2.0 * beta_edge * repeated_path));
}

double achieved_extension(int count, double radius_m, double alpha, const ChannelModel& ch,
                          double delta_max_m, double tol_m)
{
    check_even_count(count, "achieved_extension");
    if (!(alpha >= 0.0))
        throw std::invalid_argument("achieved_extension: alpha must be >= 0");
    if (!(delta_max_m > 0.0))
        throw std::invalid_argument("achieved_extension: delta_max must be > 0");
    if (alpha == 0.0)
        return 0.0;
    if (required_gain(count, radius_m, delta_max_m, ch) <= alpha)
        return delta_max_m;
    // required_gain is continuous, zero at delta = 0 and strictly
    // increasing, so the bracket [0, delta_max] always has a sign change
    return bisect([&](double delta) { return required_gain(count, radius_m, delta, ch) - alpha; },
                  0.0, delta_max_m, tol_m);
}

const char* to_string(CoverageLimit limit)
{
    return limit == CoverageLimit::power ? "power" : "stability";
}

std::vector<CoverageRecord> coverage_curve(const std::vector<int>& counts, double radius_m,
                                           double gamma_db, const ChannelModel& ch,
                                           const FrequencyGrid& grid, double delta_max_m)
{
    const double bracket = delta_max_m > 0.0 ? delta_max_m : 10.0 * radius_m;
    const double alpha_power = std::pow(10.0, gamma_db / 20.0);
    std::vector<CoverageRecord> records;
    records.reserve(counts.size());
    for (int count : counts) {
        check_even_count(count, "coverage_curve");
        CoverageRecord rec;
        rec.count = count;
        rec.alpha_g = gershgorin_bound(even_ring_deployment(count, radius_m), ch, grid);
        rec.alpha_power = alpha_power;
        rec.limit = alpha_power < rec.alpha_g ? CoverageLimit::power : CoverageLimit::stability;
        rec.alpha_used = std::min(rec.alpha_g, alpha_power);
        rec.delta_m = achieved_extension(count, radius_m, rec.alpha_used, ch, bracket);
        records.push_back(rec);
    }
    return records;
}

}  // namespace repstab
