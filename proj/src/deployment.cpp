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

#include "repstab/deployment.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace repstab {

namespace {

void check_finite(const Eigen::Matrix<double, Eigen::Dynamic, 2>& positions, const char* who)
{
    if (positions.rows() < 1)
        throw std::invalid_argument(std::string(who) + ": at least one repeater required");
    if (!positions.allFinite())
        throw std::invalid_argument(std::string(who) + ": non-finite coordinate");
}

// Lattice points of one grid cell, offset along x. m points per axis.
void append_cell(std::vector<Eigen::Vector2d>& out, double x_offset, int m, double spacing)
{
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            out.emplace_back(x_offset + double(i) * spacing, double(j) * spacing);
}

}  // namespace

Deployment pair_deployment(double distance_m)
{
    if (!(distance_m > 0.0) || !std::isfinite(distance_m))
        throw std::invalid_argument("pair_deployment: distance must be > 0");
    Deployment dep;
    dep.kind = DeploymentKind::pair;
    dep.positions.resize(2, 2);
    dep.positions << -0.5 * distance_m, 0.0, 0.5 * distance_m, 0.0;
    dep.source.setZero();  // midway; source location does not affect stability
    return dep;
}

namespace {

Deployment ring_common(int count, double radius_m, DeploymentKind kind)
{
    if (!(radius_m > 0.0) || !std::isfinite(radius_m))
        throw std::invalid_argument("ring deployment: radius must be > 0");
    Deployment dep;
    dep.kind = kind;
    dep.positions.resize(count, 2);
    // repeater 0 at the top of the circle, indices clockwise
    for (int n = 0; n < count; ++n) {
        const double theta = std::numbers::pi / 2.0 - 2.0 * std::numbers::pi * double(n) / double(count);
        dep.positions(n, 0) = radius_m * std::cos(theta);
        dep.positions(n, 1) = radius_m * std::sin(theta);
    }
    dep.source.setZero();
    return dep;
}

}  // namespace

Deployment ring_deployment(int count, double radius_m)
{
    if (count < 3)
        throw std::invalid_argument("ring_deployment: count must be >= 3");
    if (count % 2 == 0)
        throw std::invalid_argument("ring_deployment: count must be odd (use even_ring_deployment)");
    return ring_common(count, radius_m, DeploymentKind::ring);
}

Deployment even_ring_deployment(int count, double radius_m)
{
    if (count < 2 || count % 2 != 0)
        throw std::invalid_argument("even_ring_deployment: count must be even and >= 2");
    return ring_common(count, radius_m, DeploymentKind::ring);
}

Deployment grid_deployment(double cell_width_m, double spacing_m)
{
    if (!(cell_width_m > 0.0) || !std::isfinite(cell_width_m))
        throw std::invalid_argument("grid_deployment: cell width must be > 0");
    if (!(spacing_m > 0.0) || !(spacing_m <= cell_width_m))
        throw std::invalid_argument("grid_deployment: spacing must satisfy 0 < s <= W");
    // +1e-9 so an exact multiple is not lost to rounding of W/s
    const int m = int(std::floor(cell_width_m / spacing_m + 1e-9)) + 1;
    std::vector<Eigen::Vector2d> pts;
    pts.reserve(std::size_t(m) * std::size_t(m));
    append_cell(pts, 0.0, m, spacing_m);
    Deployment dep;
    dep.kind = DeploymentKind::grid;
    dep.positions.resize(Eigen::Index(pts.size()), 2);
    for (Eigen::Index i = 0; i < dep.positions.rows(); ++i)
        dep.positions.row(i) = pts[std::size_t(i)].transpose();
    dep.source << 0.5 * cell_width_m, 0.5 * cell_width_m;
    return dep;
}

Deployment multicell_deployment(int cell_count, double cell_width_m, double spacing_m)
{
    if (cell_count < 1)
        throw std::invalid_argument("multicell_deployment: cell count must be >= 1");
    Deployment base = grid_deployment(cell_width_m, spacing_m);  // validates W, s
    const int m = int(std::round(std::sqrt(double(base.size()))));
    std::vector<Eigen::Vector2d> pts;
    pts.reserve(std::size_t(cell_count) * std::size_t(m) * std::size_t(m));
    append_cell(pts, 0.0, m, spacing_m);
    // merge points on shared cell boundaries (coordinates may differ by
    // rounding when W is not an exact multiple of s)
    const double merge_tol = 1e-6 * spacing_m;
    for (int c = 1; c < cell_count; ++c) {
        std::vector<Eigen::Vector2d> cell;
        append_cell(cell, double(c) * cell_width_m, m, spacing_m);
        for (const auto& p : cell) {
            bool duplicate = false;
            for (auto it = pts.rbegin(); it != pts.rend() && !duplicate; ++it) {
                if (p.x() - it->x() > merge_tol)
                    break;  // pts is x-ordered per cell; earlier points are farther left
                duplicate = (p - *it).norm() <= merge_tol;
            }
            if (!duplicate)
                pts.push_back(p);
        }
    }
    Deployment dep;
    dep.kind = cell_count == 1 ? DeploymentKind::grid : DeploymentKind::multicell;
    dep.positions.resize(Eigen::Index(pts.size()), 2);
    for (Eigen::Index i = 0; i < dep.positions.rows(); ++i)
        dep.positions.row(i) = pts[std::size_t(i)].transpose();
    dep.source << 0.5 * cell_width_m, 0.5 * cell_width_m;  // center of the first cell
    return dep;
}

Deployment custom_deployment(const Eigen::Matrix<double, Eigen::Dynamic, 2>& positions,
                             const Eigen::Vector2d& source)
{
    check_finite(positions, "custom_deployment");
    if (!source.allFinite())
        throw std::invalid_argument("custom_deployment: non-finite source");
    Deployment dep;
    dep.kind = DeploymentKind::custom;
    dep.positions = positions;
    dep.source = source;
    distance_matrix(dep);  // rejects coincident positions
    return dep;
}

Deployment augmented_deployment(const Deployment& base,
                                const Eigen::Matrix<double, Eigen::Dynamic, 2>& extra)
{
    Eigen::Matrix<double, Eigen::Dynamic, 2> all(base.positions.rows() + extra.rows(), 2);
    all << base.positions, extra;
    return custom_deployment(all, base.source);
}

Eigen::MatrixXd distance_matrix(const Deployment& dep)
{
    check_finite(dep.positions, "distance_matrix");
    const Eigen::Index n = dep.size();
    Eigen::MatrixXd d = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = i + 1; j < n; ++j) {
            const double dist = (dep.positions.row(i) - dep.positions.row(j)).norm();
            if (dist == 0.0)
                throw std::invalid_argument("distance_matrix: coincident repeater positions");
            d(i, j) = dist;
            d(j, i) = dist;
        }
    }
    return d;
}

}  // namespace repstab
