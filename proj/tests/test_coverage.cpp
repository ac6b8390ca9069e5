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

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace repstab;

namespace {

const FreeSpaceLosChannel kChannel2GHz(2.0e9);

// Independent oracle: place the destination explicitly on the bisector of
// two adjacent repeaters of the even ring and measure Euclidean distances,
// then evaluate the power balance directly. No shared code with the
// library's chord/angle formulas.
double oracle_required_gain(int count, double radius, double delta)
{
    const Deployment ring = even_ring_deployment(count, radius);
    const double bisector = std::numbers::pi / 2.0 - std::numbers::pi / double(count);
    const Eigen::Vector2d dest =
        (radius + delta) * Eigen::Vector2d(std::cos(bisector), std::sin(bisector));
    double repeated = 0.0;  // sum over all repeaters of beta(distance), i.e. 2 * sum_k beta(L_k)
    for (Eigen::Index i = 0; i < ring.size(); ++i)
        repeated += kChannel2GHz.path_gain((ring.positions.row(i).transpose() - dest).norm());
    const double beta_edge = kChannel2GHz.path_gain(radius);
    const double beta_dest = kChannel2GHz.path_gain(radius + delta);
    return std::sqrt((beta_edge - beta_dest) / (beta_edge * repeated));
}

}  // namespace

TEST_CASE("destination distances")
{
    SUBCASE("delta = 0 reduces to the edge chords") {
        for (const int n : {2, 6, 10}) {
            const Eigen::VectorXd lengths = destination_distances(n, 1000.0, 0.0);
            REQUIRE(lengths.size() == n / 2);
            for (int k = 1; k <= n / 2; ++k) {
                const double chord =
                    2000.0 * std::sin(double(2 * k - 1) * std::numbers::pi / double(2 * n));
                CHECK(lengths(k - 1) == doctest::Approx(chord).epsilon(1e-12));
            }
        }
    }

    SUBCASE("two repeaters: hand-expanded closed form") {
        const double radius = 1000.0;
        for (const double delta : {0.0, 50.0, 400.0}) {
            const Eigen::VectorXd lengths = destination_distances(2, radius, delta);
            const double expected =
                std::sqrt(delta * delta + 2.0 * radius * radius + 2.0 * delta * radius);
            CHECK(lengths(0) == doctest::Approx(expected).epsilon(1e-12));
        }
    }

    SUBCASE("triangle inequality against the chords") {
        const Eigen::VectorXd lengths = destination_distances(12, 800.0, 250.0);
        for (int k = 1; k <= 6; ++k) {
            const double chord =
                1600.0 * std::sin(double(2 * k - 1) * std::numbers::pi / 24.0);
            CHECK(lengths(k - 1) <= 250.0 + chord + 1e-9);
        }
    }

    CHECK_THROWS_AS(destination_distances(5, 1000.0, 10.0), std::invalid_argument);
    CHECK_THROWS_AS(destination_distances(4, 1000.0, -1.0), std::invalid_argument);
}

TEST_CASE("required gain")
{
    SUBCASE("zero extension needs zero gain") {
        CHECK(required_gain(10, 1000.0, 0.0, kChannel2GHz) == 0.0);
    }

    SUBCASE("strictly increasing in the extension") {
        double prev = 0.0;
        for (double delta = 10.0; delta <= 1000.0; delta += 47.0) {
            const double alpha = required_gain(10, 1000.0, delta, kChannel2GHz);
            CHECK(alpha > prev);
            prev = alpha;
        }
    }

    SUBCASE("matches the independent geometric oracle") {
        for (const int n : {2, 4, 10, 26}) {
            for (const double delta : {10.0, 100.0, 750.0}) {
                const double lib = required_gain(n, 1000.0, delta, kChannel2GHz);
                const double ora = oracle_required_gain(n, 1000.0, delta);
                CHECK(lib == doctest::Approx(ora).epsilon(1e-9));
            }
        }
    }

    SUBCASE("power balance holds at the required gain") {
        const int n = 10;
        const double radius = 1000.0;
        for (const double delta : {25.0, 250.0, 900.0}) {
            const double alpha = required_gain(n, radius, delta, kChannel2GHz);
            const Eigen::VectorXd lengths = destination_distances(n, radius, delta);
            double repeated = 0.0;
            for (Eigen::Index k = 0; k < lengths.size(); ++k)
                repeated += kChannel2GHz.path_gain(lengths(k));
            const double beta_edge = kChannel2GHz.path_gain(radius);
            const double lhs = kChannel2GHz.path_gain(radius + delta)
                               + 2.0 * alpha * alpha * beta_edge * repeated;
            CHECK(lhs == doctest::Approx(beta_edge).epsilon(1e-9));
        }
    }

    CHECK_THROWS_AS(required_gain(10, 1000.0, -5.0, kChannel2GHz), std::invalid_argument);
}

TEST_CASE("achieved extension")
{
    const int n = 10;
    const double radius = 1000.0;

    SUBCASE("zero gain, zero extension") {
        CHECK(achieved_extension(n, radius, 0.0, kChannel2GHz, 10.0 * radius) == 0.0);
    }

    SUBCASE("round trip inverts required_gain to centimeter level") {
        for (const double target : {10.0, 100.0, 500.0}) {
            const double alpha = required_gain(n, radius, target, kChannel2GHz);
            const double back = achieved_extension(n, radius, alpha, kChannel2GHz, 10.0 * radius);
            CHECK(std::abs(back - target) <= 0.01);
        }
    }

    SUBCASE("monotone in the gain") {
        double prev = 0.0;
        for (const double alpha : {1.0e2, 1.0e3, 1.0e4, 1.0e5}) {
            const double delta = achieved_extension(n, radius, alpha, kChannel2GHz, 100.0 * radius);
            CHECK(delta > prev);
            prev = delta;
        }
    }

    SUBCASE("saturates at the bracket end") {
        const double huge = 1e12;
        CHECK(achieved_extension(n, radius, huge, kChannel2GHz, 500.0) == 500.0);
    }

    CHECK_THROWS_AS(achieved_extension(n, radius, -1.0, kChannel2GHz, 100.0),
                    std::invalid_argument);
    CHECK_THROWS_AS(achieved_extension(n, radius, 1.0, kChannel2GHz, 0.0), std::invalid_argument);
}

TEST_CASE("coverage curve")
{
    const FrequencyGrid grid(2.0e9, 20.0e6, 1.0e6);

    SUBCASE("unconstrained power: stability limits everything") {
        const auto records = coverage_curve({2, 6, 12}, 1000.0, 200.0, kChannel2GHz, grid);
        for (const auto& rec : records) {
            CHECK(rec.limit == CoverageLimit::stability);
            CHECK(rec.alpha_used == rec.alpha_g);
            CHECK(rec.delta_m >= 0.0);
        }
    }

    SUBCASE("two repeaters at 80 dB: power limited") {
        const auto records = coverage_curve({2}, 1000.0, 80.0, kChannel2GHz, grid);
        REQUIRE(records.size() == 1);
        CHECK(records[0].alpha_power == doctest::Approx(1.0e4).epsilon(1e-12));
        CHECK(records[0].alpha_g
              == doctest::Approx(1.0 / std::sqrt(kChannel2GHz.path_gain(2000.0))).epsilon(1e-12));
        CHECK(records[0].limit == CoverageLimit::power);
        CHECK(records[0].alpha_used == 1.0e4);
    }

    SUBCASE("power-to-stability crossover as the swarm grows") {
        std::vector<int> counts;
        for (int n = 2; n <= 16; n += 2)
            counts.push_back(n);
        const auto records = coverage_curve(counts, 1000.0, 80.0, kChannel2GHz, grid);
        int transitions = 0;
        for (std::size_t i = 1; i < records.size(); ++i)
            if (records[i].limit != records[i - 1].limit)
                ++transitions;
        CHECK(records.front().limit == CoverageLimit::power);
        CHECK(records.back().limit == CoverageLimit::stability);
        CHECK(transitions == 1);
    }

    SUBCASE("extension is non-decreasing in the power budget") {
        double prev = 0.0;
        for (const double gamma : {60.0, 70.0, 80.0}) {
            const auto records = coverage_curve({8}, 1000.0, gamma, kChannel2GHz, grid);
            CHECK(records[0].delta_m >= prev);
            prev = records[0].delta_m;
        }
    }

    CHECK_THROWS_AS(coverage_curve({3}, 1000.0, 80.0, kChannel2GHz, grid), std::invalid_argument);
}
