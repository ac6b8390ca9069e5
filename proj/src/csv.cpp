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

#include "repstab/csv.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <vector>

namespace repstab {

std::string format_sci(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.8e", v);
    return buf;
}

std::uint64_t fnv1a64(std::string_view bytes)
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string to_hex(std::uint64_t v)
{
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

Eigen::VectorXd read_signal_csv(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("read_signal_csv: cannot open " + path);
    std::vector<double> samples;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto start = line.find_first_not_of(" \t\r");
        if (start == std::string::npos || line[start] == '#')
            continue;
        try {
            std::size_t used = 0;
            samples.push_back(std::stod(line.substr(start), &used));
        } catch (const std::exception&) {
            throw std::runtime_error("read_signal_csv: " + path + ":" + std::to_string(line_no)
                                     + ": not a number");
        }
    }
    Eigen::VectorXd out(Eigen::Index(samples.size()));
    for (Eigen::Index i = 0; i < out.size(); ++i)
        out(i) = samples[std::size_t(i)];
    return out;
}

}  // namespace repstab
