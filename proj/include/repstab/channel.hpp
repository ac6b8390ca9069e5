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

#include <complex>

namespace repstab {

/// Propagation model mapping distance and angular frequency to a complex
/// channel transfer coefficient. Reciprocity is structural: the coefficient
/// is a function of distance only. Implementations must be immutable after
/// construction (all methods are pure).
class ChannelModel {
public:
    virtual ~ChannelModel() = default;

    /// Power gain beta(d), dimensionless. d in meters, d > 0.
    virtual double path_gain(double distance_m) const = 0;

    /// Propagation delay in seconds. d >= 0.
    virtual double delay(double distance_m) const = 0;

    /// Complex transfer coefficient at angular frequency omega [rad/s].
    virtual std::complex<double> transfer(double distance_m, double omega) const = 0;

    /// True when |transfer(d, omega)| does not depend on omega. Lets the
    /// Gershgorin bound be evaluated at a single frequency.
    virtual bool amplitude_flat() const = 0;
};

/// Free-space line-of-sight channel: beta(d) = lambda^2 / ((4 pi)^2 d^2),
/// tau(d) = d / c, transfer = sqrt(beta) e^{-j omega tau}. This is the
/// worst case for inter-repeater coupling (no shadowing or blockage) and
/// the formula is applied verbatim, so beta(d) > 1 for very small d is
/// allowed.
class FreeSpaceLosChannel final : public ChannelModel {
public:
    explicit FreeSpaceLosChannel(double carrier_hz, double speed_of_light_mps = 3.0e8);

    double carrier_hz() const { return carrier_hz_; }
    double wavelength_m() const { return wavelength_m_; }
    double speed_of_light_mps() const { return speed_of_light_mps_; }

    double path_gain(double distance_m) const override;
    double delay(double distance_m) const override;
    std::complex<double> transfer(double distance_m, double omega) const override;
    bool amplitude_flat() const override { return true; }

private:
    double carrier_hz_;
    double speed_of_light_mps_;
    double wavelength_m_;
};

}  // namespace repstab
