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

#include "robustbf/sim_harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "robustbf/joint_design.hpp"
#include "robustbf/metrics.hpp"

namespace robustbf {

namespace {

// substream tags; arbitrary but fixed so trial draws never collide
constexpr std::uint64_t kChannelStreamTag = 0x6368616e6e656cULL;
constexpr std::uint64_t kDesignStreamTag = 0x64657369676e00ULL;

double noise_variance_from_snr_db(double snr_db) {
  return std::pow(10.0, -snr_db / 10.0);
}

struct TrialContext {
  ArrayGeometry tx;
  ArrayGeometry rx;
  MisalignmentModel error_model;
  ChannelRealization realization;
};

TrialContext make_trial_context(const SystemConfig& config, int trial_index) {
  TrialContext ctx;
  ctx.tx = ArrayGeometry{config.m_t, 0.5};
  ctx.rx = ArrayGeometry{config.m_r, 0.5};
  ctx.error_model = MisalignmentModel::from_degrees(config.delta_std_deg);

  RngStream channel_rng = derive_stream(
      config.seed, {kChannelStreamTag, static_cast<std::uint64_t>(trial_index)});
  const PathSet paths =
      draw_paths(config.num_paths, config.gain_variance, ctx.error_model,
                 ctx.error_model, channel_rng);
  ctx.realization = build_channel(paths, ctx.tx, ctx.rx);
  return ctx;
}

// composite (precoder, combiner) matrices for one scheme; hybrid schemes draw
// their start from the shared per-trial design stream so that robust and
// non-robust designs differ only through the steering statistics
std::pair<arma::cx_mat, arma::cx_mat> design_scheme(
    const SystemConfig& config, const TrialContext& ctx, Scheme scheme,
    int n_rf_t, int n_rf_r, int trial_index) {
  switch (scheme) {
    case Scheme::r_hyb:
    case Scheme::nr_hyb: {
      DesignInputs inputs;
      inputs.tx = ctx.tx;
      inputs.rx = ctx.rx;
      inputs.paths = ctx.realization.paths;
      inputs.aod_model = ctx.error_model;
      inputs.aoa_model = ctx.error_model;
      inputs.n_s = config.n_s;
      inputs.n_rf_t = n_rf_t;
      inputs.n_rf_r = n_rf_r;
      inputs.channel = ctx.realization.matrix;

      RngStream design_rng = derive_stream(
          config.seed,
          {kDesignStreamTag, static_cast<std::uint64_t>(trial_index)});
      const JointDesignConfig design_config;
      const auto [precoder, combiner] =
          scheme == Scheme::r_hyb
              ? design_robust(inputs, design_config, design_rng)
              : design_nonrobust(inputs, design_config, design_rng);
      return {precoder.composite(), combiner.composite()};
    }
    case Scheme::r_db: {
      const arma::cx_mat surrogate =
          expected_channel(ctx.realization.paths, ctx.tx, ctx.rx,
                           ctx.error_model, ctx.error_model);
      return design_fully_digital(surrogate, config.n_s, config.total_power);
    }
    case Scheme::nr_db:
      return design_fully_digital(ctx.realization.matrix, config.n_s,
                                  config.total_power);
  }
  throw std::logic_error("design_scheme: unhandled scheme");
}

}  // namespace

std::vector<std::map<Scheme, double>> run_trial_multi(
    const SystemConfig& config, const std::vector<double>& snr_db_list,
    int n_rf, int trial_index) {
  if (trial_index < 0)
    throw std::invalid_argument("run_trial: trial_index must be >= 0");
  if (snr_db_list.empty())
    throw std::invalid_argument("run_trial: empty snr list");

  // n_rf > 0 pins both RF-chain counts (sweep use); 0 keeps the config's
  // per-side values
  const int n_rf_t = n_rf > 0 ? n_rf : config.n_rf_t;
  const int n_rf_r = n_rf > 0 ? n_rf : config.n_rf_r;

  const TrialContext ctx = make_trial_context(config, trial_index);

  std::vector<std::map<Scheme, double>> per_snr(snr_db_list.size());
  for (Scheme scheme : config.schemes) {
    const auto [precoder, combiner] =
        design_scheme(config, ctx, scheme, n_rf_t, n_rf_r, trial_index);
    for (size_t i = 0; i < snr_db_list.size(); ++i) {
      const double noise_variance = noise_variance_from_snr_db(snr_db_list[i]);
      per_snr[i][scheme] = spectral_efficiency(
          ctx.realization.matrix, precoder, combiner, noise_variance,
          config.total_power, config.n_s);
    }
  }
  return per_snr;
}

std::map<Scheme, double> run_trial(const SystemConfig& config, double snr_db,
                                   int n_rf, int trial_index) {
  return run_trial_multi(config, {snr_db}, n_rf, trial_index).front();
}

std::vector<SweepResult> run_sweep(
    const SystemConfig& config, int num_threads, SweepDetail* detail,
    const std::function<void(int, int)>& progress) {
  validate(config);

  // the RF-chain list drives the sweep whenever present; otherwise the SNR
  // list does; a singleton RF list pins the RF count for an SNR sweep
  const bool rf_sweep = config.n_rf_list.size() > 1 ||
                        (!config.n_rf_list.empty() &&
                         config.snr_db_list.size() <= 1);
  const int fixed_n_rf =
      (!rf_sweep && config.n_rf_list.size() == 1) ? config.n_rf_list[0] : 0;

  const std::string sweep_variable = rf_sweep ? "n_rf" : "snr_db";
  std::vector<double> points;
  if (rf_sweep)
    for (int n_rf : config.n_rf_list) points.push_back(n_rf);
  else
    points = config.snr_db_list;

  const size_t num_points = points.size();
  const size_t num_trials = static_cast<size_t>(config.trials);

  // per-trial slots, filled in any order, reduced in index order
  std::vector<std::map<Scheme, std::vector<double>>> slots(num_points);
  for (auto& point_slots : slots)
    for (Scheme scheme : config.schemes)
      point_slots[scheme].assign(num_trials, 0.0);

  std::atomic<int> next_trial{0};
  std::atomic<int> done_trials{0};
  std::mutex failure_mutex;
  std::exception_ptr failure;

  const auto worker = [&]() {
    try {
      for (;;) {
        const int trial = next_trial.fetch_add(1);
        if (trial >= config.trials) break;
        {
          std::lock_guard<std::mutex> lock(failure_mutex);
          if (failure) break;
        }
        if (rf_sweep) {
          const double snr_db = config.snr_db_list.front();
          for (size_t p = 0; p < num_points; ++p) {
            const auto values = run_trial(
                config, snr_db, static_cast<int>(points[p]), trial);
            for (const auto& [scheme, se] : values)
              slots[p].at(scheme)[static_cast<size_t>(trial)] = se;
          }
        } else {
          const auto per_snr =
              run_trial_multi(config, config.snr_db_list, fixed_n_rf, trial);
          for (size_t p = 0; p < num_points; ++p)
            for (const auto& [scheme, se] : per_snr[p])
              slots[p].at(scheme)[static_cast<size_t>(trial)] = se;
        }
        const int done = ++done_trials;
        if (progress) progress(done, config.trials);
      }
    } catch (...) {
      std::lock_guard<std::mutex> lock(failure_mutex);
      if (!failure) failure = std::current_exception();
    }
  };

  int threads = num_threads > 0
                    ? num_threads
                    : static_cast<int>(std::thread::hardware_concurrency());
  threads = std::max(1, std::min(threads, config.trials));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(threads));
    for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);

  if (detail != nullptr) {
    detail->points = points;
    detail->values = slots;
  }

  std::vector<SweepResult> results;
  results.reserve(num_points * config.schemes.size());
  for (size_t p = 0; p < num_points; ++p) {
    for (const auto& [scheme, values] : slots[p]) {
      double sum = 0.0;
      for (double v : values) sum += v;
      const double mean = sum / static_cast<double>(num_trials);

      double sq_dev = 0.0;
      for (double v : values) sq_dev += (v - mean) * (v - mean);
      const double std_error =
          num_trials > 1
              ? std::sqrt(sq_dev / static_cast<double>(num_trials - 1)) /
                    std::sqrt(static_cast<double>(num_trials))
              : 0.0;

      SweepResult result;
      result.sweep_variable = sweep_variable;
      result.sweep_value = points[p];
      result.scheme = scheme;
      result.mean_se = mean;
      result.std_error = std_error;
      result.trials = config.trials;
      results.push_back(result);
    }
  }
  return results;
}

void emit_csv(const std::vector<SweepResult>& results,
              const std::string& path) {
  std::vector<SweepResult> ordered = results;
  std::sort(ordered.begin(), ordered.end(),
            [](const SweepResult& a, const SweepResult& b) {
              if (a.sweep_value != b.sweep_value)
                return a.sweep_value < b.sweep_value;
              return scheme_name(a.scheme) < scheme_name(b.scheme);
            });

  std::ofstream file(path, std::ios::binary);  // binary keeps LF endings
  if (!file) throw std::runtime_error("emit_csv: cannot open '" + path + "'");

  file << "sweep_var,sweep_value,scheme,mean_se_bits_per_hz,std_err,trials\n";
  char buffer[256];
  for (const SweepResult& r : ordered) {
    std::snprintf(buffer, sizeof(buffer), "%s,%.17g,%s,%.17g,%.17g,%d\n",
                  r.sweep_variable.c_str(), r.sweep_value,
                  scheme_name(r.scheme).c_str(), r.mean_se, r.std_error,
                  r.trials);
    file << buffer;
  }
  if (!file)
    throw std::runtime_error("emit_csv: write failed for '" + path + "'");
}

}  // namespace robustbf
