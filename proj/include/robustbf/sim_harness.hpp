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

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "robustbf/sim_config.hpp"

namespace robustbf {

/// Aggregated spectral efficiency for one (sweep point, scheme) cell.
struct SweepResult {
  std::string sweep_variable;  // "snr_db" or "n_rf"
  double sweep_value = 0.0;
  Scheme scheme = Scheme::r_hyb;
  double mean_se = 0.0;    // bits/s/Hz
  double std_error = 0.0;  // sample std / sqrt(trials)
  int trials = 0;
};

/// Per-trial spectral efficiencies: values[point][scheme][trial]. Exposed for
/// paired statistics (confidence intervals on per-trial gaps).
struct SweepDetail {
  std::vector<double> points;
  std::vector<std::map<Scheme, std::vector<double>>> values;
};

/// One Monte-Carlo trial: draws a channel from the trial-derived stream,
/// designs each requested scheme from the estimated path data, and evaluates
/// all of them on the true channel at noise variance 10^(-snr_db/10). The
/// same trial index always sees the same channel and design randomness, so
/// every scheme is compared on identical draws.
std::map<Scheme, double> run_trial(const SystemConfig& config, double snr_db,
                                   int n_rf, int trial_index);

/// run_trial evaluated at several SNR points without redesigning (the design
/// does not depend on the noise level). Element i corresponds to
/// snr_db_list[i]; run_trial(c, s, n, t) == run_trial_multi(c, {s}, n, t)[0].
std::vector<std::map<Scheme, double>> run_trial_multi(
    const SystemConfig& config, const std::vector<double>& snr_db_list,
    int n_rf, int trial_index);

/// Full Monte-Carlo sweep over SNR or RF-chain count. Trials may execute on
/// several threads; per-trial streams and index-ordered aggregation make the
/// result identical for any thread count. `progress` (optional) is called
/// after each finished trial with (done, total).
std::vector<SweepResult> run_sweep(
    const SystemConfig& config, int num_threads = 0,
    SweepDetail* detail = nullptr,
    const std::function<void(int, int)>& progress = {});

/// Writes results as CSV: header
/// `sweep_var,sweep_value,scheme,mean_se_bits_per_hz,std_err,trials`,
/// rows ordered by sweep value then scheme name, full-precision decimals,
/// LF line endings.
void emit_csv(const std::vector<SweepResult>& results,
              const std::string& path);

}  // namespace robustbf
