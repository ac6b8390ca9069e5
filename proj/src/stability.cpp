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

#include "repstab/stability.hpp"

#include "repstab/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <thread>
#include <vector>

namespace repstab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Run fn(begin, end, chunk) over [0, n) split into contiguous chunks, one
// worker thread per chunk. The first exception thrown by a worker is
// rethrown after all workers joined.
template <typename Fn>
void parallel_chunks(Eigen::Index n, int threads, Fn&& fn)
{
    const Eigen::Index chunks = std::clamp<Eigen::Index>(threads, 1, std::max<Eigen::Index>(n, 1));
    if (chunks <= 1) {
        fn(Eigen::Index(0), n, 0);
        return;
    }
    std::vector<std::thread> pool;
    std::exception_ptr first_error;
    std::mutex error_mutex;
    for (Eigen::Index c = 0; c < chunks; ++c) {
        const Eigen::Index begin = n * c / chunks;
        const Eigen::Index end = n * (c + 1) / chunks;
        pool.emplace_back([&, begin, end, c] {
            try {
                fn(begin, end, int(c));
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error)
                    first_error = std::current_exception();
            }
        });
    }
    for (auto& t : pool)
        t.join();
    if (first_error)
        std::rethrow_exception(first_error);
}

Eigen::MatrixXcd transfer_matrix(const Eigen::MatrixXd& dist, const ChannelModel& ch, double omega)
{
    const Eigen::Index n = dist.rows();
    Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = i + 1; j < n; ++j) {
            const std::complex<double> t = ch.transfer(dist(i, j), omega);
            h(i, j) = t;
            h(j, i) = t;  // reciprocity, exact
        }
    }
    return h;
}

double max_amplitude_row_sum(const Eigen::MatrixXd& dist, const ChannelModel& ch, double omega)
{
    const Eigen::Index n = dist.rows();
    double worst = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
        double row = 0.0;
        for (Eigen::Index j = 0; j < n; ++j)
            if (j != i)
                row += std::abs(ch.transfer(dist(i, j), omega));
        worst = std::max(worst, row);
    }
    return worst;
}

void require_odd_ring(const Deployment& dep, const char* who)
{
    if (dep.kind != DeploymentKind::ring)
        throw std::invalid_argument(std::string(who) + ": deployment is not a ring");
    if (dep.size() < 3 || dep.size() % 2 == 0)
        throw std::invalid_argument(std::string(who) + ": ring must have an odd count >= 3");
}

// lambda_n / alpha for an odd ring: the eigenvalues are linear in alpha, so
// sweeps evaluate this once per frequency.
Eigen::VectorXcd unit_ring_eigenvalues(const Deployment& ring, const ChannelModel& ch, double omega)
{
    const Eigen::Index n = ring.size();
    const Eigen::Index half = (n - 1) / 2;
    const double radius = (ring.positions.row(0).transpose() - ring.source).norm();
    Eigen::VectorXcd chord(half);
    for (Eigen::Index k = 1; k <= half; ++k) {
        const double d_k = 2.0 * radius * std::sin(double(k) * std::numbers::pi / double(n));
        chord(k - 1) = ch.transfer(d_k, omega);
    }
    Eigen::VectorXcd lambda(n);
    for (Eigen::Index m = 0; m < n; ++m) {
        std::complex<double> acc = 0.0;
        for (Eigen::Index k = 1; k <= half; ++k)
            acc += chord(k - 1) * std::cos(2.0 * std::numbers::pi * double(k) * double(m) / double(n));
        lambda(m) = 2.0 * acc;
    }
    return lambda;
}

// Golden-section minimization; f is evaluated O(log((b-a)/(rel_tol*a))) times.
template <typename F>
std::pair<double, double> golden_minimize(F&& f, double a, double b, double rel_tol)
{
    constexpr double kGolden = 0.6180339887498949;
    double x1 = b - kGolden * (b - a);
    double x2 = a + kGolden * (b - a);
    double f1 = f(x1);
    double f2 = f(x2);
    while (b - a > rel_tol * a) {
        if (f1 < f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - kGolden * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + kGolden * (b - a);
            f2 = f(x2);
        }
    }
    const double xm = 0.5 * (a + b);
    return {xm, f(xm)};
}

}  // namespace

FrequencyGrid::FrequencyGrid(double carrier_hz, double bandwidth_hz, double spacing_hz)
    : carrier_hz_(carrier_hz), bandwidth_hz_(bandwidth_hz), spacing_hz_(spacing_hz)
{
    if (!(carrier_hz > 0.0) || !std::isfinite(carrier_hz))
        throw std::invalid_argument("FrequencyGrid: carrier must be > 0");
    if (!(bandwidth_hz >= 0.0) || !std::isfinite(bandwidth_hz))
        throw std::invalid_argument("FrequencyGrid: bandwidth must be >= 0");
    if (!(spacing_hz > 0.0) || !std::isfinite(spacing_hz))
        throw std::invalid_argument("FrequencyGrid: spacing must be > 0");
    f_min_hz_ = carrier_hz - 0.5 * bandwidth_hz;
    if (!(f_min_hz_ > 0.0))
        throw std::invalid_argument("FrequencyGrid: band extends to non-positive frequencies");
    size_ = Eigen::Index(std::floor(bandwidth_hz / spacing_hz + 1e-9)) + 1;
}

const char* to_string(MeasureKind kind)
{
    return kind == MeasureKind::determinant ? "determinant" : "circulant-eigen";
}

Eigen::MatrixXcd build_h(const Deployment& dep, const ChannelModel& ch, double omega)
{
    if (!(omega > 0.0))
        throw std::invalid_argument("build_h: omega must be > 0");
    return transfer_matrix(distance_matrix(dep), ch, omega);
}

double gershgorin_bound(const Deployment& dep, const ChannelModel& ch, const FrequencyGrid& grid)
{
    if (dep.size() == 1)
        return kInf;  // no feedback path: empty interference sum
    const Eigen::MatrixXd dist = distance_matrix(dep);
    double worst_row_sum;
    if (ch.amplitude_flat()) {
        worst_row_sum = max_amplitude_row_sum(dist, ch, grid.carrier_omega());
    } else {
        worst_row_sum = 0.0;
        for (Eigen::Index i = 0; i < grid.size(); ++i)
            worst_row_sum = std::max(worst_row_sum, max_amplitude_row_sum(dist, ch, grid.omega(i)));
    }
    return 1.0 / worst_row_sum;
}

Eigen::VectorXd det_measure_sweep(const Deployment& dep, const ChannelModel& ch,
                                  const FrequencyGrid& grid, const Eigen::VectorXd& alphas,
                                  int threads)
{
    if ((alphas.array() < 0.0).any())
        throw std::invalid_argument("det_measure_sweep: gains must be >= 0");
    const Eigen::Index n_alpha = alphas.size();
    if (dep.size() == 1)
        return Eigen::VectorXd::Ones(n_alpha);  // 1x1 system: det(I) for every gain
    const Eigen::MatrixXd dist = distance_matrix(dep);
    const Eigen::Index n = dep.size();

    const int used = std::max(1, threads);
    std::vector<Eigen::VectorXd> local(std::size_t(used), Eigen::VectorXd::Constant(n_alpha, kInf));
    parallel_chunks(grid.size(), used, [&](Eigen::Index begin, Eigen::Index end, int chunk) {
        Eigen::VectorXd& mins = local[std::size_t(chunk)];
        Eigen::MatrixXcd m(n, n);
        for (Eigen::Index wi = begin; wi < end; ++wi) {
            const Eigen::MatrixXcd h = transfer_matrix(dist, ch, grid.omega(wi));
            for (Eigen::Index ai = 0; ai < n_alpha; ++ai) {
                m = -alphas(ai) * h;
                m.diagonal().array() += 1.0;
                const double v = std::abs(lu_determinant(m));
                if (v < mins(ai))
                    mins(ai) = v;
            }
        }
    });
    Eigen::VectorXd out = local[0];
    for (int c = 1; c < used; ++c)
        out = out.cwiseMin(local[std::size_t(c)]);
    return out;
}

double stability_measure_det(const Deployment& dep, const ChannelModel& ch, double alpha,
                             const FrequencyGrid& grid, int threads)
{
    Eigen::VectorXd one(1);
    one << alpha;
    return det_measure_sweep(dep, ch, grid, one, threads)(0);
}

Eigen::VectorXcd circulant_eigenvalues(const Deployment& ring, const ChannelModel& ch,
                                       double alpha, double omega)
{
    require_odd_ring(ring, "circulant_eigenvalues");
    return alpha * unit_ring_eigenvalues(ring, ch, omega);
}

Eigen::VectorXcd circulant_eigenvalues_dft(const Deployment& ring, const ChannelModel& ch,
                                           double alpha, double omega)
{
    require_odd_ring(ring, "circulant_eigenvalues_dft");
    const Eigen::VectorXcd first_column = alpha * build_h(ring, ch, omega).col(0);
    return dft(first_column);
}

double stability_measure_circulant(const Deployment& ring, const ChannelModel& ch, double alpha,
                                   const FrequencyGrid& grid)
{
    Eigen::VectorXd one(1);
    one << alpha;
    return circulant_measure_sweep(ring, ch, grid, one)(0);
}

Eigen::VectorXd circulant_measure_sweep(const Deployment& ring, const ChannelModel& ch,
                                        const FrequencyGrid& grid, const Eigen::VectorXd& alphas)
{
    require_odd_ring(ring, "circulant_measure_sweep");
    if ((alphas.array() < 0.0).any())
        throw std::invalid_argument("circulant_measure_sweep: gains must be >= 0");
    const Eigen::Index n_alpha = alphas.size();
    Eigen::VectorXd mins = Eigen::VectorXd::Constant(n_alpha, kInf);
    for (Eigen::Index wi = 0; wi < grid.size(); ++wi) {
        const Eigen::VectorXcd unit = unit_ring_eigenvalues(ring, ch, grid.omega(wi));
        for (Eigen::Index ai = 0; ai < n_alpha; ++ai) {
            const double v = (alphas(ai) * unit.array() - 1.0).abs().minCoeff();
            if (v < mins(ai))
                mins(ai) = v;
        }
    }
    return mins;
}

StabilityReport stability_sweep(const Deployment& dep, const ChannelModel& ch,
                                const FrequencyGrid& grid, const Eigen::VectorXd& alphas,
                                int threads)
{
    const bool circulant =
        dep.kind == DeploymentKind::ring && dep.size() >= 3 && dep.size() % 2 == 1;
    StabilityReport report{
        alphas,
        circulant ? circulant_measure_sweep(dep, ch, grid, alphas)
                  : det_measure_sweep(dep, ch, grid, alphas, threads),
        gershgorin_bound(dep, ch, grid),
        std::nullopt,
        circulant ? MeasureKind::circulant_eigen : MeasureKind::determinant,
        grid};
    return report;
}

Eigen::VectorXd log_spaced(double lo, double hi, int n)
{
    if (!(lo > 0.0) || !(hi > lo))
        throw std::invalid_argument("log_spaced: requires 0 < lo < hi");
    if (n < 1)
        throw std::invalid_argument("log_spaced: n must be >= 1");
    Eigen::VectorXd out(n);
    if (n == 1) {
        out(0) = lo;
        return out;
    }
    const double ratio = hi / lo;
    for (int i = 0; i < n; ++i)
        out(i) = lo * std::pow(ratio, double(i) / double(n - 1));
    out(n - 1) = hi;
    return out;
}

std::optional<double> estimate_alpha_max(const Deployment& dep, const ChannelModel& ch,
                                         const FrequencyGrid& grid, double alpha_lo,
                                         double alpha_hi, int n_alpha, double eps_stab,
                                         double alpha_rel_tol, int threads)
{
    if (!(alpha_lo >= 0.0) || !(alpha_hi > alpha_lo) || !std::isfinite(alpha_hi))
        throw std::invalid_argument("estimate_alpha_max: requires 0 <= alpha_lo < alpha_hi");
    if (n_alpha < 2)
        throw std::invalid_argument("estimate_alpha_max: n_alpha must be >= 2");
    if (!(eps_stab > 0.0) || !(alpha_rel_tol > 0.0))
        throw std::invalid_argument("estimate_alpha_max: eps_stab and alpha_rel_tol must be > 0");
    if (dep.size() == 1)
        return std::nullopt;  // no feedback: stable for every gain

    const double lo = alpha_lo > 0.0 ? alpha_lo : alpha_hi * 1e-9;
    const Eigen::VectorXd alphas = log_spaced(lo, alpha_hi, n_alpha);
    const Eigen::VectorXd m = det_measure_sweep(dep, ch, grid, alphas, threads);
    const auto measure = [&](double a) { return stability_measure_det(dep, ch, a, grid, threads); };
    const auto crossing = [&](double a_stable, double a_collapsed) {
        return bisect([&](double a) { return measure(a) - eps_stab; }, a_stable, a_collapsed,
                      alpha_rel_tol * a_stable);
    };

    if (m(0) < eps_stab)
        return alphas(0);  // already collapsed at the low end of the range
    for (Eigen::Index i = 1; i < n_alpha; ++i)
        if (m(i) < eps_stab)
            return crossing(alphas(i - 1), alphas(i));

    // No swept point crosses. Near-tight systems (the two-repeater case in
    // particular) collapse only inside a dip far narrower than the grid
    // step, so refine interior local minima of the sweep, smallest alpha
    // first, and bisect the descending edge of the first dip that reaches
    // the threshold.
    constexpr int kMaxDipRefinements = 8;
    int refined = 0;
    for (Eigen::Index i = 1; i + 1 < n_alpha && refined < kMaxDipRefinements; ++i) {
        if (m(i) > m(i - 1) || m(i) > m(i + 1))
            continue;
        ++refined;
        // locate the dip noticeably tighter than the crossing tolerance so a
        // dip that only just reaches eps_stab is not missed
        const auto [dip_alpha, dip_measure] = golden_minimize(measure, alphas(i - 1), alphas(i + 1),
                                                              0.05 * alpha_rel_tol);
        if (dip_measure < eps_stab)
            return crossing(alphas(i - 1), dip_alpha);
    }
    return std::nullopt;
}

}  // namespace repstab
