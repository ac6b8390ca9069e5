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
#include "repstab/csv.hpp"
#include "repstab/scenario.hpp"

#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

using namespace repstab;

namespace {

std::string run(void (*cmd)(const Scenario&, std::ostream&), const Scenario& sc)
{
    std::ostringstream out;
    cmd(sc, out);
    return out.str();
}

std::vector<std::string> data_lines(const std::string& csv)
{
    std::vector<std::string> rows;
    std::istringstream in(csv);
    std::string line;
    while (std::getline(in, line))
        if (!line.empty() && line[0] != '#')
            rows.push_back(line);
    return rows;
}

const char* kPairScenario = R"({
  "deployment": { "kind": "pair", "distance_m": 1000.0 },
  "channel": { "carrier_hz": 2.0e9 },
  "grid": { "bandwidth_hz": 2.0e5, "spacing_hz": 20.0 },
  "analysis": { "n_alpha": 48, "alpha_min": 41887.9, "alpha_max": 167551.6 }
})";

}  // namespace

TEST_CASE("csv formatting helpers")
{
    CHECK(format_sci(83775.80409572781) == "8.37758041e+04");
    CHECK(format_sci(0.0) == "0.00000000e+00");
    CHECK(format_sci(-1.5e-7) == "-1.50000000e-07");
    // FNV-1a reference vectors
    CHECK(fnv1a64("") == 0xcbf29ce484222325ULL);
    CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cULL);
    CHECK(to_hex(0xcbf29ce484222325ULL) == "cbf29ce484222325");
}

TEST_CASE("signal csv reader")
{
    const std::string path = "test_signal_tmp.csv";
    {
        std::ofstream out(path);
        out << "# a comment\n1.5\n\n-2.0\n 3.25\n";
    }
    const Eigen::VectorXd v = read_signal_csv(path);
    REQUIRE(v.size() == 3);
    CHECK(v(0) == 1.5);
    CHECK(v(1) == -2.0);
    CHECK(v(2) == 3.25);
    std::remove(path.c_str());
    CHECK_THROWS(read_signal_csv("does_not_exist.csv"));
}

TEST_CASE("scenario parsing")
{
    SUBCASE("pair scenario with defaults") {
        const Scenario sc = parse_scenario(kPairScenario);
        CHECK(sc.deployment.kind == DeploymentKind::pair);
        CHECK(sc.deployment.size() == 2);
        CHECK(sc.channel.carrier_hz() == 2.0e9);
        CHECK(sc.channel.speed_of_light_mps() == 3.0e8);
        CHECK(sc.grid.carrier_hz() == 2.0e9);  // inherited from the channel
        CHECK(sc.grid.bandwidth_hz() == 2.0e5);
        CHECK(sc.analysis.n_alpha == 48);
        CHECK(sc.analysis.eps_stab == 1e-3);
        CHECK(sc.analysis.coverage_counts.size() == 20);  // 2,4,...,40
        CHECK(sc.hash == fnv1a64(kPairScenario));
    }

    SUBCASE("ring, grid, multicell, custom kinds") {
        CHECK(parse_scenario(R"({"deployment":{"kind":"ring","count":15,"radius_m":1000}})")
                  .deployment.size() == 15);
        CHECK(parse_scenario(R"({"deployment":{"kind":"ring","count":4,"radius_m":1000}})")
                  .deployment.size() == 4);
        CHECK(parse_scenario(
                  R"({"deployment":{"kind":"grid","cell_width_m":2000,"spacing_m":200}})")
                  .deployment.size() == 121);
        CHECK(parse_scenario(R"({"deployment":{"kind":"multicell","cell_width_m":2000,)"
                             R"("spacing_m":200,"cell_count":2}})")
                  .deployment.size() == 231);
        const Scenario custom = parse_scenario(
            R"({"deployment":{"kind":"custom","positions":[[0,0],[10,0],[0,10]],"source":[5,5]}})");
        CHECK(custom.deployment.size() == 3);
        CHECK(custom.deployment.source.x() == 5.0);
    }

    SUBCASE("extra positions retag the deployment as custom") {
        const Scenario sc = parse_scenario(
            R"({"deployment":{"kind":"ring","count":15,"radius_m":1000,)"
            R"("extra_positions":[[1001,0],[1002,0]]}})");
        CHECK(sc.deployment.kind == DeploymentKind::custom);
        CHECK(sc.deployment.size() == 17);
    }

    SUBCASE("errors carry the offending path") {
        CHECK_THROWS_WITH_AS(parse_scenario(R"({"deployment":{"kind":"blob"}})"),
                             doctest::Contains("deployment.kind"), ScenarioError);
        CHECK_THROWS_WITH_AS(parse_scenario(R"({"deployment":{"kind":"pair"}})"),
                             doctest::Contains("deployment.distance_m"), ScenarioError);
        CHECK_THROWS_WITH_AS(
            parse_scenario(R"({"deployment":{"kind":"pair","distance_m":10,"bogus":1}})"),
            doctest::Contains("deployment.bogus"), ScenarioError);
        CHECK_THROWS_AS(parse_scenario("{"), ScenarioError);
        CHECK_THROWS_AS(parse_scenario(R"({"deployment":{"kind":"pair","distance_m":-4}})"),
                        ScenarioError);
        CHECK_THROWS_AS(
            parse_scenario(R"({"deployment":{"kind":"ring","count":15,"radius_m":1000},)"
                           R"("analysis":{"n_alpha":1}})"),
            ScenarioError);
        CHECK_THROWS_AS(
            parse_scenario(R"({"deployment":{"kind":"ring","count":15,"radius_m":1000},)"
                           R"("analysis":{"coverage_counts":[2,3]}})"),
            ScenarioError);
    }

    SUBCASE("echo section validated at parse time") {
        const char* fractional = R"({
          "deployment": { "kind": "pair", "distance_m": 300.0 },
          "echo": { "alpha": 1.0, "beta": 0.25, "delay_s": 1.03e-4,
                    "sample_rate_hz": 1.0e4, "duration_s": 0.1 }
        })";
        CHECK_THROWS_WITH_AS(parse_scenario(fractional), doctest::Contains("echo"), ScenarioError);
    }

    SUBCASE("bound_sweep needs a grid deployment and valid spacings") {
        CHECK_THROWS_AS(
            parse_scenario(R"({"deployment":{"kind":"pair","distance_m":10},)"
                           R"("bound_sweep":{"spacings_m":[100],"cell_counts":[1]}})"),
            ScenarioError);
        CHECK_THROWS_AS(
            parse_scenario(R"({"deployment":{"kind":"grid","cell_width_m":2000,"spacing_m":200},)"
                           R"("bound_sweep":{"spacings_m":[4000],"cell_counts":[1]}})"),
            ScenarioError);
    }
}

TEST_CASE("bound command")
{
    SUBCASE("pair bound matches 1/sqrt(beta)") {
        const Scenario sc = parse_scenario(kPairScenario);
        const std::string csv = run(cmd_bound, sc);
        CHECK(csv.find("# repstab bound") == 0);
        CHECK(csv.find("# scenario_hash=") != std::string::npos);
        const auto rows = data_lines(csv);
        REQUIRE(rows.size() == 2);
        CHECK(rows[0] == "alpha_g,alpha_g_db");
        CHECK(rows[1].find("8.37758041e+04") == 0);
    }

    SUBCASE("spacing sweep: bound grows with spacing, shrinks with cells") {
        const Scenario sc = parse_scenario(
            R"({"deployment":{"kind":"grid","cell_width_m":2000,"spacing_m":200},)"
            R"("bound_sweep":{"spacings_m":[200,300,400,500],"cell_counts":[1,2]}})");
        const std::string csv = run(cmd_bound, sc);
        const auto rows = data_lines(csv);
        REQUIRE(rows.size() == 9);
        CHECK(rows[0] == "spacing_m,cell_count,alpha_g,alpha_g_db");
        struct Entry { double s; int m; double bound; };
        std::vector<Entry> entries;
        for (std::size_t i = 1; i < rows.size(); ++i) {
            Entry e{};
            char tail[64];
            REQUIRE(std::sscanf(rows[i].c_str(), "%lf,%d,%lf,%63s", &e.s, &e.m, &e.bound, tail)
                    == 4);
            entries.push_back(e);
        }
        for (const auto& a : entries)
            for (const auto& b : entries) {
                if (a.m == b.m && a.s < b.s)
                    CHECK(a.bound < b.bound);  // sparser cells couple less
                if (a.s == b.s && a.m < b.m)
                    CHECK(a.bound >= b.bound);  // more cells only add interferers
            }
    }
}

TEST_CASE("sweep command")
{
    SUBCASE("gains below the bound keep the measure positive, grid sorted") {
        const double alpha_g = 83775.80409572781;
        std::ostringstream scenario;
        scenario << R"({"deployment":{"kind":"pair","distance_m":1000},)"
                 << R"("grid":{"bandwidth_hz":2e6,"spacing_hz":1e4},)"
                 << R"("analysis":{"n_alpha":40,"alpha_min":)" << 0.01 * alpha_g
                 << R"(,"alpha_max":)" << 0.9 * alpha_g << "}}";
        const Scenario sc = parse_scenario(scenario.str());
        const std::string csv = run(cmd_sweep, sc);
        CHECK(csv.find("# alpha_g=8.37758041e+04") != std::string::npos);
        const auto rows = data_lines(csv);
        REQUIRE(rows.size() == 41);
        CHECK(rows[0] == "alpha,measure,measure_kind");
        double prev_alpha = 0.0;
        for (std::size_t i = 1; i < rows.size(); ++i) {
            double alpha = 0.0, measure = 0.0;
            REQUIRE(std::sscanf(rows[i].c_str(), "%lf,%lf", &alpha, &measure) == 2);
            CHECK(alpha > prev_alpha);
            CHECK(measure > 0.0);
            CHECK(rows[i].find("determinant") != std::string::npos);
            prev_alpha = alpha;
        }
    }

    SUBCASE("odd rings use the circulant measure and collapse past the bound") {
        const Scenario sc = parse_scenario(
            R"({"deployment":{"kind":"ring","count":15,"radius_m":1000},)"
            R"("grid":{"bandwidth_hz":2e7,"spacing_hz":1e4},)"
            R"("analysis":{"n_alpha":120,"eps_stab":1e-2}})");
        const std::string csv = run(cmd_sweep, sc);
        CHECK(csv.find("# measure_kind=circulant-eigen") != std::string::npos);
        const auto rows = data_lines(csv);
        const double alpha_g = 6193.259304941519;
        bool dipped = false;
        for (std::size_t i = 1; i < rows.size(); ++i) {
            double alpha = 0.0, measure = 0.0;
            REQUIRE(std::sscanf(rows[i].c_str(), "%lf,%lf", &alpha, &measure) == 2);
            if (alpha < alpha_g)
                CHECK(measure > sc.analysis.eps_stab);
            dipped = dipped || (alpha >= alpha_g && measure < sc.analysis.eps_stab);
        }
        CHECK(dipped);
    }

    SUBCASE("even rings fall back to the determinant measure") {
        const Scenario sc = parse_scenario(
            R"({"deployment":{"kind":"ring","count":4,"radius_m":1000},)"
            R"("grid":{"bandwidth_hz":1e6,"spacing_hz":1e4},"analysis":{"n_alpha":8}})");
        CHECK(run(cmd_sweep, sc).find("# measure_kind=determinant") != std::string::npos);
    }
}

TEST_CASE("maxgain command")
{
    SUBCASE("pair tightness: ratio within 1%") {
        const Scenario sc = parse_scenario(kPairScenario);
        const std::string csv = run(cmd_maxgain, sc);
        const auto rows = data_lines(csv);
        REQUIRE(rows.size() == 2);
        CHECK(rows[0] == "alpha_g,alpha_max_estimate,ratio,status");
        double alpha_g = 0.0, estimate = 0.0, ratio = 0.0;
        REQUIRE(std::sscanf(rows[1].c_str(), "%lf,%lf,%lf", &alpha_g, &estimate, &ratio) == 3);
        CHECK(ratio >= 0.99);
        CHECK(ratio <= 1.01);
        CHECK(rows[1].find(",ok") != std::string::npos);
    }

    SUBCASE("range below the bound reports stable-over-range with empty columns") {
        const Scenario sc = parse_scenario(
            R"({"deployment":{"kind":"pair","distance_m":1000},)"
            R"("grid":{"bandwidth_hz":2e6,"spacing_hz":1e4},)"
            R"("analysis":{"n_alpha":16,"alpha_min":1000,"alpha_max":40000}})");
        const auto rows = data_lines(run(cmd_maxgain, sc));
        REQUIRE(rows.size() == 2);
        CHECK(rows[1].find(",,,stable-over-range") != std::string::npos);
    }
}

TEST_CASE("coverage command")
{
    SUBCASE("effectively unlimited power: stability limits every count") {
        const Scenario sc = parse_scenario(
            R"({"deployment":{"kind":"ring","count":10,"radius_m":1000},)"
            R"("grid":{"bandwidth_hz":0,"spacing_hz":1},)"
            R"("analysis":{"gamma_db":200,"coverage_counts":[2,6,12]}})");
        const auto rows = data_lines(run(cmd_coverage, sc));
        REQUIRE(rows.size() == 4);
        CHECK(rows[0] == "n,alpha_g,alpha_power,alpha_used,limiting,delta_m");
        for (std::size_t i = 1; i < rows.size(); ++i) {
            CHECK(rows[i].find("stability") != std::string::npos);
            double n = 0.0, ag = 0.0, ap = 0.0, used = 0.0;
            REQUIRE(std::sscanf(rows[i].c_str(), "%lf,%lf,%lf,%lf", &n, &ag, &ap, &used) == 4);
            CHECK(used == ag);
        }
    }

    SUBCASE("80 dB crossover from power to stability") {
        const Scenario sc = parse_scenario(
            R"({"deployment":{"kind":"ring","count":10,"radius_m":1000},)"
            R"("grid":{"bandwidth_hz":0,"spacing_hz":1},"analysis":{"gamma_db":80}})");
        const auto rows = data_lines(run(cmd_coverage, sc));
        REQUIRE(rows.size() == 21);  // default counts 2..40
        int transitions = 0;
        bool was_power = rows[1].find("power") != std::string::npos;
        CHECK(was_power);
        for (std::size_t i = 2; i < rows.size(); ++i) {
            const bool is_power = rows[i].find("power") != std::string::npos;
            if (is_power != was_power)
                ++transitions;
            was_power = is_power;
        }
        CHECK(transitions == 1);
        CHECK(!was_power);
    }

    SUBCASE("non-ring deployments are refused") {
        const Scenario sc = parse_scenario(kPairScenario);
        CHECK_THROWS_AS(run(cmd_coverage, sc), ScenarioError);
    }
}

TEST_CASE("echo command")
{
    const char* scenario = R"({
      "deployment": { "kind": "pair", "distance_m": 300.0 },
      "echo": { "alpha": 1.0, "beta": 0.25, "delay_s": 1.0e-3,
                "sample_rate_hz": 1.0e4, "duration_s": 0.05 }
    })";
    const Scenario sc = parse_scenario(scenario);
    const std::string csv = run(cmd_echo, sc);
    const auto rows = data_lines(csv);
    REQUIRE(rows.size() == 501);  // header + 500 samples
    CHECK(rows[0] == "t,y1,y2");

    // default input is a unit impulse: echoes follow the geometric train
    double t = 0.0, y1 = 0.0, y2 = 0.0;
    REQUIRE(std::sscanf(rows[1].c_str(), "%lf,%lf,%lf", &t, &y1, &y2) == 3);
    CHECK(y1 == 1.0);
    REQUIRE(std::sscanf(rows[1 + 20].c_str(), "%lf,%lf,%lf", &t, &y1, &y2) == 3);
    CHECK(y1 == doctest::Approx(0.25).epsilon(1e-12));  // alpha (a^2 b) at t = 2 tau

    SUBCASE("missing echo section") {
        const Scenario no_echo = parse_scenario(kPairScenario);
        CHECK_THROWS_AS(run(cmd_echo, no_echo), ScenarioError);
    }
}

TEST_CASE("determinism: identical scenario, identical bytes, any thread count")
{
    const char* scenario = R"({
      "deployment": { "kind": "custom",
                      "positions": [[0,0],[150,40],[90,210],[260,130],[40,300]] },
      "grid": { "bandwidth_hz": 2.0e6, "spacing_hz": 2.0e4 },
      "analysis": { "n_alpha": 30 }
    })";
    Scenario sc = parse_scenario(scenario);
    sc.analysis.threads = 1;
    const std::string first = run(cmd_sweep, sc);
    const std::string second = run(cmd_sweep, sc);
    CHECK(first == second);
    sc.analysis.threads = 3;
    CHECK(run(cmd_sweep, sc) == first);

    Scenario sc2 = parse_scenario(scenario);
    sc2.analysis.threads = 2;
    CHECK(run(cmd_maxgain, sc2) == run(cmd_maxgain, sc2));
}
