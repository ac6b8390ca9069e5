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

#include "repstab/channel.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace repstab {

FreeSpaceLosChannel::FreeSpaceLosChannel(double carrier_hz, double speed_of_light_mps)
    : carrier_hz_(carrier_hz), speed_of_light_mps_(speed_of_light_mps)
{
    if (!(carrier_hz > 0.0) || !std::isfinite(carrier_hz))
        throw std::invalid_argument("FreeSpaceLosChannel: carrier frequency must be > 0");
    if (!(speed_of_light_mps > 0.0) || !std::isfinite(speed_of_light_mps))
        throw std::invalid_argument("FreeSpaceLosChannel: speed of light must be > 0");
    wavelength_m_ = speed_of_light_mps_ / carrier_hz_;
}

double FreeSpaceLosChannel::path_gain(double distance_m) const
{
    if (!(distance_m > 0.0) || !std::isfinite(distance_m))
        throw std::invalid_argument("path_gain: distance must be > 0 (free-space model diverges at d = 0)");
    const double four_pi = 4.0 * std::numbers::pi;
    const double amp = wavelength_m_ / (four_pi * distance_m);
    return amp * amp;
}

double FreeSpaceLosChannel::delay(double distance_m) const
{
    if (!(distance_m >= 0.0) || !std::isfinite(distance_m))
        throw std::invalid_argument("delay: distance must be >= 0");
    return distance_m / speed_of_light_mps_;
}

std::complex<double> FreeSpaceLosChannel::transfer(double distance_m, double omega) const
{
    const double amp = std::sqrt(path_gain(distance_m));
    return std::polar(amp, -omega * delay(distance_m));
}

}  // namespace repstab
