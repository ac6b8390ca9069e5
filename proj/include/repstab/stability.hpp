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

#include <Eigen/Dense>

#include <optional>

namespace repstab {

/// Discrete set of angular frequencies covering
/// [carrier - bandwidth/2, carrier + bandwidth/2] with the given spacing.
class FrequencyGrid {
public:
    FrequencyGrid(double carrier_hz, double bandwidth_hz, double spacing_hz);

    double carrier_hz() const { return carrier_hz_; }
    double bandwidth_hz() const { return bandwidth_hz_; }
    double spacing_hz() const { return spacing_hz_; }

    Eigen::Index size() const { return size_; }
    double frequency_hz(Eigen::Index i) const { return f_min_hz_ + double(i) * spacing_hz_; }
    double omega(Eigen::Index i) const { return 2.0 * EIGEN_PI * frequency_hz(i); }
    double carrier_omega() const { return 2.0 * EIGEN_PI * carrier_hz_; }

private:
    double carrier_hz_;
    double bandwidth_hz_;
    double spacing_hz_;
    double f_min_hz_;
    Eigen::Index size_;
};

enum class MeasureKind { determinant, circulant_eigen };

const char* to_string(MeasureKind kind);

/// Result of a gain sweep: per-alpha stability measure plus the Gershgorin
/// bound and, when estimated, the gain at which the measure first collapses.
struct StabilityReport {
    Eigen::VectorXd alpha_grid;
    Eigen::VectorXd measure;
    double alpha_g = 0.0;                       // +inf when unbounded (N == 1)
    std::optional<double> alpha_max_estimate;   // empty: stable over the range,
                                                // or not estimated
    MeasureKind kind = MeasureKind::determinant;
    FrequencyGrid grid;
};

/// Inter-repeater transfer matrix H(j omega): entry (n, n') is the channel
/// coefficient at the pairwise distance, the diagonal is exactly zero
/// (self-interference removed), and the matrix equals its non-conjugate
/// transpose by reciprocity.
Eigen::MatrixXcd build_h(const Deployment& dep, const ChannelModel& ch, double omega);

/// Gershgorin lower bound on the maximum stable amplification gain:
/// alpha_G = inf_omega min_n 1 / sum_{n' != n} |h_nn'(j omega)|.
/// Amplitude-flat channels are evaluated at the carrier only (the row sums
/// are then frequency-independent). A single repeater has no feedback path
/// and returns +infinity.
double gershgorin_bound(const Deployment& dep, const ChannelModel& ch,
                        const FrequencyGrid& grid);

/// min over the frequency grid of |det(I - alpha H(j omega))|. Frequencies
/// are evaluated independently (optionally in parallel); the reduction is a
/// min, so the result does not depend on evaluation order.
double stability_measure_det(const Deployment& dep, const ChannelModel& ch,
                             double alpha, const FrequencyGrid& grid, int threads = 1);

/// Determinant measure for a whole gain grid; one pass over the frequency
/// grid serves every alpha.
Eigen::VectorXd det_measure_sweep(const Deployment& dep, const ChannelModel& ch,
                                  const FrequencyGrid& grid,
                                  const Eigen::VectorXd& alphas, int threads = 1);

/// Eigenvalues of alpha*H for an odd ring via the circulant closed form:
/// lambda_n = 2 alpha sum_{k=1..K} h_k(omega) cos(2 pi k (n-1) / N),
/// with h_k the coefficient at the k-th chord distance 2 R sin(k pi / N).
Eigen::VectorXcd circulant_eigenvalues(const Deployment& ring, const ChannelModel& ch,
                                       double alpha, double omega);

/// Same eigenvalues by the independent route: DFT of the first column of
/// alpha*H. Bin m corresponds to closed-form index n = m + 1.
Eigen::VectorXcd circulant_eigenvalues_dft(const Deployment& ring, const ChannelModel& ch,
                                           double alpha, double omega);

/// min over the grid and eigenvalue index of |lambda_n(alpha, omega) - 1|.
double stability_measure_circulant(const Deployment& ring, const ChannelModel& ch,
                                   double alpha, const FrequencyGrid& grid);

Eigen::VectorXd circulant_measure_sweep(const Deployment& ring, const ChannelModel& ch,
                                        const FrequencyGrid& grid,
                                        const Eigen::VectorXd& alphas);

/// Measure sweep over a gain grid with the measure kind picked by the
/// deployment: circulant eigenvalues for odd rings, determinants otherwise.
/// alpha_max_estimate is left unset.
StabilityReport stability_sweep(const Deployment& dep, const ChannelModel& ch,
                                const FrequencyGrid& grid, const Eigen::VectorXd& alphas,
                                int threads = 1);

/// n >= 1 logarithmically spaced values from lo to hi (both > 0).
Eigen::VectorXd log_spaced(double lo, double hi, int n);

/// Estimate of the smallest gain at which the determinant measure collapses
/// below eps_stab: sweeps n_alpha log-spaced gains in [alpha_lo, alpha_hi],
/// locates the first threshold crossing (refining it by bisection), and if
/// no swept point crosses, refines interior local minima of the sweep in
/// ascending order — the dip of a near-tight system can be much narrower
/// than the grid step. Returns nullopt when stable over the whole range.
std::optional<double> estimate_alpha_max(const Deployment& dep, const ChannelModel& ch,
                                         const FrequencyGrid& grid,
                                         double alpha_lo, double alpha_hi, int n_alpha,
                                         double eps_stab, double alpha_rel_tol = 1e-3,
                                         int threads = 1);

}  // namespace repstab
