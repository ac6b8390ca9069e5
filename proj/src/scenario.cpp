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

#include "repstab/scenario.hpp"

#include "repstab/csv.hpp"
#include "repstab/echo_sim.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace repstab {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& msg)
{
    throw ScenarioError("scenario: " + path + ": " + msg);
}

void check_keys(const json& obj, const std::string& path, std::initializer_list<const char*> allowed)
{
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        bool known = false;
        for (const char* key : allowed)
            known = known || it.key() == key;
        if (!known)
            fail(path + "." + it.key(), "unknown key");
    }
}

double get_number(const json& obj, const std::string& path, const char* key)
{
    if (!obj.contains(key))
        fail(path + "." + key, "missing required value");
    const json& v = obj.at(key);
    if (!v.is_number())
        fail(path + "." + key, "expected a number");
    return v.get<double>();
}

double get_number_or(const json& obj, const std::string& path, const char* key, double fallback)
{
    return obj.contains(key) ? get_number(obj, path, key) : fallback;
}

int get_int(const json& obj, const std::string& path, const char* key)
{
    if (!obj.contains(key))
        fail(path + "." + key, "missing required value");
    const json& v = obj.at(key);
    if (!v.is_number_integer())
        fail(path + "." + key, "expected an integer");
    return v.get<int>();
}

int get_int_or(const json& obj, const std::string& path, const char* key, int fallback)
{
    return obj.contains(key) ? get_int(obj, path, key) : fallback;
}

bool get_bool_or(const json& obj, const std::string& path, const char* key, bool fallback)
{
    if (!obj.contains(key))
        return fallback;
    const json& v = obj.at(key);
    if (!v.is_boolean())
        fail(path + "." + key, "expected a boolean");
    return v.get<bool>();
}

std::string get_string_or(const json& obj, const std::string& path, const char* key,
                          const std::string& fallback)
{
    if (!obj.contains(key))
        return fallback;
    const json& v = obj.at(key);
    if (!v.is_string())
        fail(path + "." + key, "expected a string");
    return v.get<std::string>();
}

Eigen::Matrix<double, Eigen::Dynamic, 2> get_points(const json& obj, const std::string& path,
                                                    const char* key)
{
    const json& arr = obj.at(key);
    const std::string where = path + "." + key;
    if (!arr.is_array() || arr.empty())
        fail(where, "expected a non-empty array of [x, y] pairs");
    Eigen::Matrix<double, Eigen::Dynamic, 2> pts(Eigen::Index(arr.size()), 2);
    for (std::size_t i = 0; i < arr.size(); ++i) {
        const json& p = arr[i];
        if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number())
            fail(where + "[" + std::to_string(i) + "]", "expected [x, y]");
        pts(Eigen::Index(i), 0) = p[0].get<double>();
        pts(Eigen::Index(i), 1) = p[1].get<double>();
    }
    return pts;
}

template <typename T, typename Getter>
std::vector<T> get_list(const json& obj, const std::string& path, const char* key, Getter get_one)
{
    const json& arr = obj.at(key);
    const std::string where = path + "." + key;
    if (!arr.is_array() || arr.empty())
        fail(where, "expected a non-empty array");
    std::vector<T> out;
    out.reserve(arr.size());
    for (std::size_t i = 0; i < arr.size(); ++i)
        out.push_back(get_one(arr[i], where + "[" + std::to_string(i) + "]"));
    return out;
}

void echo_value(Scenario& sc, const std::string& key, double v)
{
    sc.echo_params.emplace_back(key, format_sci(v));
}

void echo_value(Scenario& sc, const std::string& key, const std::string& v)
{
    sc.echo_params.emplace_back(key, v);
}

void parse_deployment(Scenario& sc, const json& root)
{
    if (!root.contains("deployment"))
        fail("deployment", "missing section");
    const json& d = root.at("deployment");
    if (!d.is_object())
        fail("deployment", "expected an object");
    check_keys(d, "deployment",
               {"kind", "distance_m", "count", "radius_m", "cell_width_m", "spacing_m",
                "cell_count", "positions", "source", "extra_positions"});
    const std::string kind = get_string_or(d, "deployment", "kind", "");
    echo_value(sc, "deployment.kind", kind);
    try {
        if (kind == "pair") {
            const double dist = get_number(d, "deployment", "distance_m");
            sc.deployment = pair_deployment(dist);
            echo_value(sc, "deployment.distance_m", dist);
        } else if (kind == "ring") {
            const int count = get_int(d, "deployment", "count");
            const double radius = get_number(d, "deployment", "radius_m");
            sc.deployment = count % 2 == 0 ? even_ring_deployment(count, radius)
                                           : ring_deployment(count, radius);
            sc.ring_radius_m = radius;
            echo_value(sc, "deployment.count", std::to_string(count));
            echo_value(sc, "deployment.radius_m", radius);
        } else if (kind == "grid" || kind == "multicell") {
            const double width = get_number(d, "deployment", "cell_width_m");
            const double spacing = get_number(d, "deployment", "spacing_m");
            const int cells = kind == "grid" ? 1 : get_int(d, "deployment", "cell_count");
            sc.deployment = multicell_deployment(cells, width, spacing);
            sc.cell_width_m = width;
            echo_value(sc, "deployment.cell_width_m", width);
            echo_value(sc, "deployment.spacing_m", spacing);
            if (kind == "multicell")
                echo_value(sc, "deployment.cell_count", std::to_string(cells));
        } else if (kind == "custom") {
            if (!d.contains("positions"))
                fail("deployment.positions", "missing required value");
            const auto pts = get_points(d, "deployment", "positions");
            Eigen::Vector2d source = Eigen::Vector2d::Zero();
            if (d.contains("source")) {
                const json& s = d.at("source");
                if (!s.is_array() || s.size() != 2 || !s[0].is_number() || !s[1].is_number())
                    fail("deployment.source", "expected [x, y]");
                source << s[0].get<double>(), s[1].get<double>();
            }
            sc.deployment = custom_deployment(pts, source);
            echo_value(sc, "deployment.count", std::to_string(pts.rows()));
        } else {
            fail("deployment.kind", "expected one of pair|ring|grid|multicell|custom");
        }
        if (d.contains("extra_positions")) {
            const auto extra = get_points(d, "deployment", "extra_positions");
            sc.deployment = augmented_deployment(sc.deployment, extra);
            echo_value(sc, "deployment.extra_count", std::to_string(extra.rows()));
        }
    } catch (const std::invalid_argument& e) {
        fail("deployment", e.what());
    }
}

}  // namespace

Scenario parse_scenario(const std::string& text)
{
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ScenarioError(std::string("scenario: ") + e.what());
    }
    if (!root.is_object())
        fail("$", "expected a JSON object");
    check_keys(root, "$", {"deployment", "channel", "grid", "analysis", "echo", "bound_sweep"});

    Scenario sc;
    sc.hash = fnv1a64(text);

    parse_deployment(sc, root);

    double carrier_hz = 2.0e9;
    double c_mps = 3.0e8;
    if (root.contains("channel")) {
        const json& ch = root.at("channel");
        check_keys(ch, "channel", {"carrier_hz", "speed_of_light_mps"});
        carrier_hz = get_number_or(ch, "channel", "carrier_hz", carrier_hz);
        c_mps = get_number_or(ch, "channel", "speed_of_light_mps", c_mps);
    }
    try {
        sc.channel = FreeSpaceLosChannel(carrier_hz, c_mps);
    } catch (const std::invalid_argument& e) {
        fail("channel", e.what());
    }
    echo_value(sc, "channel.carrier_hz", carrier_hz);
    echo_value(sc, "channel.speed_of_light_mps", c_mps);

    double grid_carrier = carrier_hz;
    double grid_bw = 20.0e6;
    double grid_spacing = 10.0e3;
    if (root.contains("grid")) {
        const json& g = root.at("grid");
        check_keys(g, "grid", {"carrier_hz", "bandwidth_hz", "spacing_hz"});
        grid_carrier = get_number_or(g, "grid", "carrier_hz", grid_carrier);
        grid_bw = get_number_or(g, "grid", "bandwidth_hz", grid_bw);
        grid_spacing = get_number_or(g, "grid", "spacing_hz", grid_spacing);
    }
    try {
        sc.grid = FrequencyGrid(grid_carrier, grid_bw, grid_spacing);
    } catch (const std::invalid_argument& e) {
        fail("grid", e.what());
    }
    echo_value(sc, "grid.carrier_hz", grid_carrier);
    echo_value(sc, "grid.bandwidth_hz", grid_bw);
    echo_value(sc, "grid.spacing_hz", grid_spacing);

    AnalysisParams& a = sc.analysis;
    if (root.contains("analysis")) {
        const json& an = root.at("analysis");
        check_keys(an, "analysis",
                   {"alpha_min", "alpha_max", "n_alpha", "eps_stab", "alpha_tol_rel", "gamma_db",
                    "gamma_is_power_db", "delta_max_m", "coverage_counts"});
        a.alpha_min = get_number_or(an, "analysis", "alpha_min", a.alpha_min);
        a.alpha_max = get_number_or(an, "analysis", "alpha_max", a.alpha_max);
        a.n_alpha = get_int_or(an, "analysis", "n_alpha", a.n_alpha);
        a.eps_stab = get_number_or(an, "analysis", "eps_stab", a.eps_stab);
        a.alpha_tol_rel = get_number_or(an, "analysis", "alpha_tol_rel", a.alpha_tol_rel);
        a.gamma_db = get_number_or(an, "analysis", "gamma_db", a.gamma_db);
        a.gamma_is_power_db = get_bool_or(an, "analysis", "gamma_is_power_db", a.gamma_is_power_db);
        a.delta_max_m = get_number_or(an, "analysis", "delta_max_m", a.delta_max_m);
        if (an.contains("coverage_counts"))
            a.coverage_counts = get_list<int>(an, "analysis", "coverage_counts",
                                              [](const json& v, const std::string& where) {
                                                  if (!v.is_number_integer())
                                                      fail(where, "expected an integer");
                                                  return v.get<int>();
                                              });
        if (a.n_alpha < 2)
            fail("analysis.n_alpha", "must be >= 2");
        if (!(a.eps_stab > 0.0))
            fail("analysis.eps_stab", "must be > 0");
        if (!(a.alpha_tol_rel > 0.0))
            fail("analysis.alpha_tol_rel", "must be > 0");
        if (a.alpha_max > 0.0 && !(a.alpha_min < a.alpha_max))
            fail("analysis.alpha_max", "must be > alpha_min");
        for (int count : a.coverage_counts)
            if (count < 2 || count % 2 != 0)
                fail("analysis.coverage_counts", "counts must be even and >= 2");
    }
    if (a.coverage_counts.empty())
        for (int count = 2; count <= 40; count += 2)
            a.coverage_counts.push_back(count);

    if (root.contains("echo")) {
        const json& e = root.at("echo");
        check_keys(e, "echo",
                   {"alpha", "beta", "delay_s", "sample_rate_hz", "duration_s", "x1_csv", "x2_csv"});
        EchoParams ep;
        ep.alpha = get_number(e, "echo", "alpha");
        ep.beta = get_number(e, "echo", "beta");
        ep.delay_s = get_number(e, "echo", "delay_s");
        ep.sample_rate_hz = get_number(e, "echo", "sample_rate_hz");
        ep.duration_s = get_number(e, "echo", "duration_s");
        ep.x1_csv = get_string_or(e, "echo", "x1_csv", "");
        ep.x2_csv = get_string_or(e, "echo", "x2_csv", "");
        EchoConfig cfg{ep.alpha, ep.beta, ep.delay_s, ep.sample_rate_hz, ep.duration_s};
        try {
            cfg.sample_count();
            cfg.delay_samples();
            if (!(ep.alpha >= 0.0) || !(ep.beta >= 0.0))
                throw std::invalid_argument("alpha and beta must be >= 0");
        } catch (const std::invalid_argument& ex) {
            fail("echo", ex.what());
        }
        sc.echo = ep;
        echo_value(sc, "echo.alpha", ep.alpha);
        echo_value(sc, "echo.beta", ep.beta);
        echo_value(sc, "echo.delay_s", ep.delay_s);
        echo_value(sc, "echo.sample_rate_hz", ep.sample_rate_hz);
        echo_value(sc, "echo.duration_s", ep.duration_s);
    }

    if (root.contains("bound_sweep")) {
        if (sc.cell_width_m <= 0.0)
            fail("bound_sweep", "requires a grid or multicell deployment");
        const json& b = root.at("bound_sweep");
        check_keys(b, "bound_sweep", {"spacings_m", "cell_counts"});
        BoundSweep bs;
        bs.spacings_m = get_list<double>(b, "bound_sweep", "spacings_m",
                                         [](const json& v, const std::string& where) {
                                             if (!v.is_number())
                                                 fail(where, "expected a number");
                                             return v.get<double>();
                                         });
        bs.cell_counts = get_list<int>(b, "bound_sweep", "cell_counts",
                                       [](const json& v, const std::string& where) {
                                           if (!v.is_number_integer())
                                               fail(where, "expected an integer");
                                           return v.get<int>();
                                       });
        for (double s : bs.spacings_m)
            if (!(s > 0.0) || !(s <= sc.cell_width_m))
                fail("bound_sweep.spacings_m", "spacings must satisfy 0 < s <= cell width");
        for (int m : bs.cell_counts)
            if (m < 1)
                fail("bound_sweep.cell_counts", "cell counts must be >= 1");
        sc.bound_sweep = std::move(bs);
    }

    return sc;
}

Scenario load_scenario(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ScenarioError("scenario: cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_scenario(buf.str());
}

}  // namespace repstab
