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

namespace repstab {

enum class DeploymentKind { pair, ring, grid, multicell, custom };

/// A set of repeater positions in the plane plus the source position.
/// Positions are one repeater per row, in meters.
struct Deployment {
    DeploymentKind kind = DeploymentKind::custom;
    Eigen::Matrix<double, Eigen::Dynamic, 2> positions;
    Eigen::Vector2d source = Eigen::Vector2d::Zero();

    Eigen::Index size() const { return positions.rows(); }
};

/// Two repeaters separated by distance_m, source midway between them.
Deployment pair_deployment(double distance_m);

/// count (odd, >= 3) repeaters equally spaced on a circle of radius_m,
/// source at the center. Repeater 0 sits at the top of the circle and the
/// index runs clockwise; pairwise distances are 2 R sin(k pi / N) with
/// k = min(|n - n'|, N - |n - n'|).
Deployment ring_deployment(int count, double radius_m);

/// Even-count variant (count >= 2), used by the coverage analysis.
Deployment even_ring_deployment(int count, double radius_m);

/// Repeaters on a square lattice covering a cell_width_m x cell_width_m
/// cell including its boundary: (i*spacing, j*spacing) for
/// i, j in 0..floor(W/s). Source at the cell center.
Deployment grid_deployment(double cell_width_m, double spacing_m);

/// cell_count cells tiled in a horizontal row (cell i offset by i*W), each
/// populated like grid_deployment. Positions on shared cell boundaries are
/// deduplicated. Source at the center of the first cell.
Deployment multicell_deployment(int cell_count, double cell_width_m, double spacing_m);

/// Explicit position list. All coordinates must be finite and no two
/// positions may coincide.
Deployment custom_deployment(const Eigen::Matrix<double, Eigen::Dynamic, 2>& positions,
                             const Eigen::Vector2d& source = Eigen::Vector2d::Zero());

/// Append extra repeater positions; the result is tagged custom since any
/// special structure (ring, grid) no longer holds.
Deployment augmented_deployment(const Deployment& base,
                                const Eigen::Matrix<double, Eigen::Dynamic, 2>& extra);

/// Pairwise Euclidean distances: symmetric, zero diagonal, strictly
/// positive off the diagonal. Throws on coincident positions.
Eigen::MatrixXd distance_matrix(const Deployment& dep);

}  // namespace repstab
