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

#include <cstdint>
#include <string>
#include <string_view>

namespace repstab {

/// Scientific notation with 9 significant digits ("%.8e"). All CSV floats
/// go through this so identical runs produce byte-identical files.
std::string format_sci(double v);

/// 64-bit FNV-1a, used to fingerprint scenario files in CSV headers.
std::uint64_t fnv1a64(std::string_view bytes);

std::string to_hex(std::uint64_t v);

/// Signal file: one sample per row; blank lines and '#' comments skipped.
Eigen::VectorXd read_signal_csv(const std::string& path);

}  // namespace repstab
