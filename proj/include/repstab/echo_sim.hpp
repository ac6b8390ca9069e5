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

#include <Eigen/Dense>

#include <utility>

namespace repstab {

/// Discrete-time two-repeater echo configuration. The inter-repeater delay
/// must land on an exact sample (checked to 1e-9 relative) and be at least
/// one sample — fractional-delay interpolation would pollute the exact
/// geometric echo ratios this simulation exists to expose.
struct EchoConfig {
    double alpha = 0.0;           // amplitude gain of each repeater
    double beta = 0.0;            // inter-repeater power gain
    double delay_s = 0.0;         // one-way propagation delay tau
    double sample_rate_hz = 0.0;
    double duration_s = 0.0;

    Eigen::Index sample_count() const;
    /// Delay in samples; throws std::invalid_argument when tau is not an
    /// integer number of samples or is below one sample.
    Eigen::Index delay_samples() const;
};

/// Sample-wise ping-pong recursion
///   y1[t] = alpha x1[t] + alpha sqrt(beta) y2[t - D]
///   y2[t] = alpha x2[t] + alpha sqrt(beta) y1[t - D]
/// with y = 0 for t < 0. Inputs must both have cfg.sample_count() samples;
/// outputs have the same length (later echoes are truncated).
std::pair<Eigen::VectorXd, Eigen::VectorXd>
simulate_pair_echo(const EchoConfig& cfg, const Eigen::VectorXd& x1, const Eigen::VectorXd& x2);

/// Coefficients (alpha^2 beta)^k, k = 0..terms-1, of the round-trip echo
/// train bouncing between the two repeaters.
Eigen::VectorXd impulse_train_coefficients(double alpha, double beta, int terms);

}  // namespace repstab
