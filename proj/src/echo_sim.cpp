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

#include "repstab/echo_sim.hpp"

#include <cmath>
#include <stdexcept>

namespace repstab {

Eigen::Index EchoConfig::sample_count() const
{
    if (!(sample_rate_hz > 0.0) || !(duration_s > 0.0))
        throw std::invalid_argument("EchoConfig: sample rate and duration must be > 0");
    return Eigen::Index(std::llround(duration_s * sample_rate_hz));
}

Eigen::Index EchoConfig::delay_samples() const
{
    if (!(sample_rate_hz > 0.0))
        throw std::invalid_argument("EchoConfig: sample rate must be > 0");
    const double exact = delay_s * sample_rate_hz;
    const double rounded = std::round(exact);
    if (rounded < 1.0)
        throw std::invalid_argument("EchoConfig: delay must be at least one sample");
    if (std::abs(exact - rounded) > 1e-9 * rounded)
        throw std::invalid_argument("EchoConfig: delay is not an integer number of samples");
    return Eigen::Index(rounded);
}

std::pair<Eigen::VectorXd, Eigen::VectorXd>
simulate_pair_echo(const EchoConfig& cfg, const Eigen::VectorXd& x1, const Eigen::VectorXd& x2)
{
    if (!(cfg.alpha >= 0.0) || !(cfg.beta >= 0.0))
        throw std::invalid_argument("simulate_pair_echo: alpha and beta must be >= 0");
    const Eigen::Index n = cfg.sample_count();
    const Eigen::Index d = cfg.delay_samples();
    if (x1.size() != n || x2.size() != n)
        throw std::invalid_argument("simulate_pair_echo: inputs must have duration * sample_rate samples");

    const double loop = cfg.alpha * std::sqrt(cfg.beta);
    Eigen::VectorXd y1 = Eigen::VectorXd::Zero(n);
    Eigen::VectorXd y2 = Eigen::VectorXd::Zero(n);
    for (Eigen::Index t = 0; t < n; ++t) {
        y1(t) = cfg.alpha * x1(t);
        y2(t) = cfg.alpha * x2(t);
        if (t >= d) {
            y1(t) += loop * y2(t - d);
            y2(t) += loop * y1(t - d);
        }
    }
    return {std::move(y1), std::move(y2)};
}

Eigen::VectorXd impulse_train_coefficients(double alpha, double beta, int terms)
{
    if (terms < 1)
        throw std::invalid_argument("impulse_train_coefficients: terms must be >= 1");
    const double ratio = alpha * alpha * beta;
    Eigen::VectorXd coeff(terms);
    coeff(0) = 1.0;
    for (int k = 1; k < terms; ++k)
        coeff(k) = coeff(k - 1) * ratio;
    return coeff;
}

}  // namespace repstab
