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

#include "repstab/commands.hpp"

#include "repstab/coverage.hpp"
#include "repstab/csv.hpp"
#include "repstab/echo_sim.hpp"

#include <cmath>
#include <limits>

namespace repstab {

namespace {

void write_header(const Scenario& sc, const char* command, std::ostream& out)
{
    out << "# repstab " << command << "\n";
    out << "# scenario_hash=" << to_hex(sc.hash) << "\n";
    for (const auto& [key, value] : sc.echo_params)
        out << "# " << key << "=" << value << "\n";
}

std::string format_gain(double g)
{
    return std::isinf(g) ? "inf" : format_sci(g);
}

std::string format_gain_db(double g)
{
    return std::isinf(g) ? "" : format_sci(20.0 * std::log10(g));
}

// Resolve the gain sweep range; defaults bracket the Gershgorin bound.
std::pair<double, double> alpha_range(const Scenario& sc, double alpha_g)
{
    double lo = sc.analysis.alpha_min;
    double hi = sc.analysis.alpha_max;
    if (hi <= 0.0) {
        if (!std::isfinite(alpha_g))
            throw ScenarioError("scenario: analysis.alpha_max: required (single repeater has no "
                                "finite Gershgorin bound to derive a default range from)");
        hi = 10.0 * alpha_g;
    }
    if (lo <= 0.0)
        lo = std::isfinite(alpha_g) ? 0.1 * alpha_g : hi * 1e-3;
    if (!(lo < hi))
        throw ScenarioError("scenario: analysis.alpha_min: must be below alpha_max");
    return {lo, hi};
}

bool is_odd_ring(const Deployment& dep)
{
    return dep.kind == DeploymentKind::ring && dep.size() % 2 == 1 && dep.size() >= 3;
}

}  // namespace

void cmd_bound(const Scenario& sc, std::ostream& out)
{
    write_header(sc, "bound", out);
    if (sc.bound_sweep) {
        out << "spacing_m,cell_count,alpha_g,alpha_g_db\n";
        for (double spacing : sc.bound_sweep->spacings_m) {
            for (int cells : sc.bound_sweep->cell_counts) {
                const Deployment dep = multicell_deployment(cells, sc.cell_width_m, spacing);
                const double alpha_g = gershgorin_bound(dep, sc.channel, sc.grid);
                out << format_sci(spacing) << ',' << cells << ',' << format_gain(alpha_g) << ','
                    << format_gain_db(alpha_g) << "\n";
            }
        }
        return;
    }
    const double alpha_g = gershgorin_bound(sc.deployment, sc.channel, sc.grid);
    out << "alpha_g,alpha_g_db\n";
    out << format_gain(alpha_g) << ',' << format_gain_db(alpha_g) << "\n";
}

void cmd_sweep(const Scenario& sc, std::ostream& out)
{
    const double alpha_g = gershgorin_bound(sc.deployment, sc.channel, sc.grid);
    const auto [lo, hi] = alpha_range(sc, alpha_g);
    const Eigen::VectorXd alphas = log_spaced(lo, hi, sc.analysis.n_alpha);
    const bool circulant = is_odd_ring(sc.deployment);
    const MeasureKind kind = circulant ? MeasureKind::circulant_eigen : MeasureKind::determinant;
    const Eigen::VectorXd measure =
        circulant ? circulant_measure_sweep(sc.deployment, sc.channel, sc.grid, alphas)
                  : det_measure_sweep(sc.deployment, sc.channel, sc.grid, alphas,
                                      sc.analysis.threads);
    write_header(sc, "sweep", out);
    out << "# alpha_g=" << format_gain(alpha_g) << "\n";
    out << "# measure_kind=" << to_string(kind) << "\n";
    out << "alpha,measure,measure_kind\n";
    for (Eigen::Index i = 0; i < alphas.size(); ++i)
        out << format_sci(alphas(i)) << ',' << format_sci(measure(i)) << ',' << to_string(kind)
            << "\n";
}

void cmd_maxgain(const Scenario& sc, std::ostream& out)
{
    const double alpha_g = gershgorin_bound(sc.deployment, sc.channel, sc.grid);
    std::optional<double> estimate;
    if (sc.deployment.size() > 1) {
        const auto [lo, hi] = alpha_range(sc, alpha_g);
        estimate = estimate_alpha_max(sc.deployment, sc.channel, sc.grid, lo, hi,
                                      sc.analysis.n_alpha, sc.analysis.eps_stab,
                                      sc.analysis.alpha_tol_rel, sc.analysis.threads);
    }
    write_header(sc, "maxgain", out);
    out << "alpha_g,alpha_max_estimate,ratio,status\n";
    if (estimate) {
        out << format_gain(alpha_g) << ',' << format_sci(*estimate) << ','
            << format_sci(*estimate / alpha_g) << ",ok\n";
    } else {
        out << format_gain(alpha_g) << ",,,stable-over-range\n";
    }
}

void cmd_coverage(const Scenario& sc, std::ostream& out)
{
    if (!(sc.ring_radius_m > 0.0))
        throw ScenarioError("scenario: deployment: coverage requires a ring deployment "
                            "(the cell radius sets the geometry)");
    // With the power-dB convention (default) gamma maps to amplitude as
    // 10^(gamma/20); the alternative reads gamma as 10*log10(alpha).
    const double gamma_db_effective =
        sc.analysis.gamma_is_power_db ? sc.analysis.gamma_db : 2.0 * sc.analysis.gamma_db;
    const auto records = coverage_curve(sc.analysis.coverage_counts, sc.ring_radius_m,
                                        gamma_db_effective, sc.channel, sc.grid,
                                        sc.analysis.delta_max_m);
    write_header(sc, "coverage", out);
    out << "# gamma_db=" << format_sci(sc.analysis.gamma_db) << "\n";
    out << "n,alpha_g,alpha_power,alpha_used,limiting,delta_m\n";
    for (const auto& rec : records)
        out << rec.count << ',' << format_gain(rec.alpha_g) << ',' << format_sci(rec.alpha_power)
            << ',' << format_sci(rec.alpha_used) << ',' << to_string(rec.limit) << ','
            << format_sci(rec.delta_m) << "\n";
}

void cmd_echo(const Scenario& sc, std::ostream& out)
{
    if (!sc.echo)
        throw ScenarioError("scenario: echo: missing section");
    const EchoParams& ep = *sc.echo;
    const EchoConfig cfg{ep.alpha, ep.beta, ep.delay_s, ep.sample_rate_hz, ep.duration_s};
    const Eigen::Index n = cfg.sample_count();

    Eigen::VectorXd x1, x2;
    if (ep.x1_csv.empty()) {
        x1 = Eigen::VectorXd::Zero(n);
        x1(0) = 1.0;  // unit impulse
    } else {
        x1 = read_signal_csv(ep.x1_csv);
    }
    x2 = ep.x2_csv.empty() ? Eigen::VectorXd::Zero(n) : read_signal_csv(ep.x2_csv);
    if (x1.size() != n || x2.size() != n)
        throw ScenarioError("scenario: echo: input signals must have duration * sample_rate samples");

    const auto [y1, y2] = simulate_pair_echo(cfg, x1, x2);
    write_header(sc, "echo", out);
    out << "t,y1,y2\n";
    for (Eigen::Index i = 0; i < n; ++i)
        out << format_sci(double(i) / ep.sample_rate_hz) << ',' << format_sci(y1(i)) << ','
            << format_sci(y2(i)) << "\n";
}

}  // namespace repstab
