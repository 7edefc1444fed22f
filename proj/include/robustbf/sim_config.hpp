// robustbf - robust hybrid beamforming for mmWave MIMO under beam misalignment
// Copyright (C) 2026 The robustbf authors
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

#include <cstdint>
#include <string>
#include <vector>

namespace robustbf {

enum class Scheme { r_hyb, nr_hyb, r_db, nr_db };

/// Canonical name, e.g. "R-HYB"; used in CSV output.
std::string scheme_name(Scheme scheme);

/// Parses CLI/config tokens like "r-hyb" (case-insensitive); throws on
/// unknown names.
Scheme parse_scheme(const std::string& token);

/// One experiment description: system dimensions, error spread, sweep lists,
/// trial count, and the schemes to evaluate. Angles are degrees at this
/// boundary and radians everywhere inside.
struct SystemConfig {
  int m_t = 128;
  int m_r = 72;
  int n_s = 4;
  int n_rf_t = 8;
  int n_rf_r = 8;
  int num_paths = 10;
  double delta_std_deg = 1.154;
  std::vector<double> snr_db_list = {0.0};
  std::vector<int> n_rf_list = {};  // non-empty selects an RF-chain sweep
  int trials = 1000;
  std::uint64_t seed = 1;
  double total_power = 1.0;
  double gain_variance = 1.0;
  std::vector<Scheme> schemes = {Scheme::r_hyb, Scheme::nr_hyb, Scheme::r_db,
                                 Scheme::nr_db};
};

/// Loads a flat JSON object whose keys mirror the SystemConfig field names.
/// Unknown keys are rejected. Missing keys keep their defaults.
SystemConfig load_config(const std::string& path);

/// Parses config JSON from a string (same rules as load_config).
SystemConfig parse_config(const std::string& json_text);

/// Checks invariants (stream/RF-chain/antenna ordering, sweep-list shapes,
/// positivity) and throws std::invalid_argument with a precise message.
/// Warns on stderr when the error bound exceeds the approximate mainlobe
/// half-width of either array.
void validate(const SystemConfig& config);

}  // namespace robustbf
