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

#include "robustbf/joint_design.hpp"

#include <cmath>
#include <stdexcept>

namespace robustbf {

void validate(const DesignInputs& inputs) {
  validate(inputs.tx);
  validate(inputs.rx);
  if (inputs.n_s < 1)
    throw std::invalid_argument("DesignInputs: n_s must be >= 1");
  if (inputs.n_s > inputs.n_rf_t || inputs.n_rf_t > inputs.tx.num_elements)
    throw std::invalid_argument(
        "DesignInputs: need n_s <= n_rf_t <= transmit elements");
  if (inputs.n_s > inputs.n_rf_r || inputs.n_rf_r > inputs.rx.num_elements)
    throw std::invalid_argument(
        "DesignInputs: need n_s <= n_rf_r <= receive elements");
  if (inputs.channel.n_rows != static_cast<arma::uword>(inputs.rx.num_elements) ||
      inputs.channel.n_cols != static_cast<arma::uword>(inputs.tx.num_elements))
    throw std::invalid_argument("DesignInputs: channel shape mismatch");
  if (inputs.paths.size() == 0)
    throw std::invalid_argument("DesignInputs: empty path set");
}

arma::cx_mat effective_channel(const arma::cx_mat& w_inner,
                               const arma::cx_mat& w_rf,
                               const arma::cx_mat& channel,
                               const arma::cx_mat& f_rf,
                               const arma::cx_mat& f_inner) {
  if (w_rf.n_rows != channel.n_rows || f_rf.n_rows != channel.n_cols ||
      w_inner.n_rows != w_rf.n_cols || f_inner.n_rows != f_rf.n_cols)
    throw std::invalid_argument("effective_channel: dimension mismatch");
  return w_inner.t() * (w_rf.t() * channel * f_rf) * f_inner;
}

std::pair<arma::cx_mat, arma::cx_mat> second_stage(const arma::cx_mat& h_eff,
                                                   int n_s) {
  if (n_s < 1 ||
      static_cast<arma::uword>(n_s) > std::min(h_eff.n_rows, h_eff.n_cols))
    throw std::invalid_argument("second_stage: n_s exceeds effective rank dims");

  arma::cx_mat left, right;
  arma::vec singular_values;
  if (!arma::svd(left, singular_values, right, h_eff, "std"))
    throw std::runtime_error("second_stage: SVD failed to converge");

  const arma::uword k = static_cast<arma::uword>(n_s) - 1;
  return {right.cols(0, k), left.cols(0, k)};
}

arma::cx_mat finalize_precoder(const arma::cx_mat& f_rf,
                               const arma::cx_mat& f_inner,
                               const arma::cx_mat& f_second, int n_s) {
  if (f_second.n_cols != static_cast<arma::uword>(n_s))
    throw std::invalid_argument("finalize_precoder: f_second must have n_s columns");
  const arma::cx_mat digital = f_inner * f_second;
  const double power = arma::norm(f_rf * digital, "fro");
  if (!(power > 0.0))
    throw std::runtime_error("finalize_precoder: degenerate design (zero power)");
  return std::sqrt(static_cast<double>(n_s)) / power * digital;
}

namespace {

std::pair<HybridPrecoder, HybridCombiner> design_hybrid(
    const DesignInputs& inputs, const JointDesignConfig& config,
    RngStream& rng, bool robust) {
  validate(inputs);
  if (config.passes < 1)
    throw std::invalid_argument("JointDesignConfig: passes must be >= 1");

  const arma::cx_mat tx_response =
      robust ? build_expected_response_matrix(inputs.paths,
                                              ArraySide::transmitter, inputs.tx,
                                              inputs.aod_model)
             : build_nominal_response_matrix(inputs.paths,
                                             ArraySide::transmitter, inputs.tx);
  const arma::cx_mat rx_response =
      robust ? build_expected_response_matrix(inputs.paths, ArraySide::receiver,
                                              inputs.rx, inputs.aoa_model)
             : build_nominal_response_matrix(inputs.paths, ArraySide::receiver,
                                             inputs.rx);

  // the channel as the designer knows it: expected (error statistics folded
  // in) or plainly reconstructed from the estimates; the true channel is
  // never available at design time
  const arma::cx_mat design_channel =
      robust ? expected_channel(inputs.paths, inputs.tx, inputs.rx,
                                inputs.aod_model, inputs.aoa_model)
             : estimated_channel(inputs.paths, inputs.tx, inputs.rx);

  const BasisMatrix tx_basis = dominant_basis(tx_response, inputs.n_rf_t);
  const BasisMatrix rx_basis = dominant_basis(rx_response, inputs.n_rf_r);

  // random-phase combiner start; replaced by the factorized combiner after
  // the first pass
  const double w_modulus =
      1.0 / std::sqrt(static_cast<double>(inputs.rx.num_elements));
  arma::cx_mat w_rf = random_phase_matrix(
      static_cast<arma::uword>(inputs.rx.num_elements),
      static_cast<arma::uword>(inputs.n_rf_r), w_modulus, rng);
  arma::cx_mat w_inner = random_phase_matrix(
      static_cast<arma::uword>(inputs.n_rf_r),
      static_cast<arma::uword>(inputs.n_rf_r), 1.0, rng);

  // The factorizations depend only on the bases, not on the pass, so they
  // are computed once and reused in every pass.
  const HybridFactor tx_factor =
      factorize(tx_basis, inputs.n_rf_t, config.gp, config.altmin);
  const HybridFactor rx_factor =
      factorize(rx_basis, inputs.n_rf_r, config.gp, config.altmin);

  HybridPrecoder precoder;
  HybridCombiner combiner;
  precoder.analog = tx_factor.analog;
  precoder.digital_inner = tx_factor.digital;

  for (int pass = 1; pass <= config.passes; ++pass) {
    // precoder second stage against the current combiner factors
    arma::cx_mat h_eff = effective_channel(w_inner, w_rf, design_channel,
                                           precoder.analog,
                                           precoder.digital_inner);
    precoder.digital_second = second_stage(h_eff, inputs.n_s).first;
    precoder.digital = finalize_precoder(precoder.analog,
                                         precoder.digital_inner,
                                         precoder.digital_second, inputs.n_s);

    // combiner factors and its second stage against the fresh precoder
    combiner.analog = rx_factor.analog;
    combiner.digital_inner = rx_factor.digital;
    w_rf = combiner.analog;
    w_inner = combiner.digital_inner;

    h_eff = effective_channel(w_inner, w_rf, design_channel, precoder.analog,
                              precoder.digital_inner);
    combiner.digital_second = second_stage(h_eff, inputs.n_s).second;
    combiner.digital = combiner.digital_inner * combiner.digital_second;
  }
  return {std::move(precoder), std::move(combiner)};
}

}  // namespace

std::pair<HybridPrecoder, HybridCombiner> design_robust(
    const DesignInputs& inputs, const JointDesignConfig& config,
    RngStream& rng) {
  return design_hybrid(inputs, config, rng, true);
}

std::pair<HybridPrecoder, HybridCombiner> design_nonrobust(
    const DesignInputs& inputs, const JointDesignConfig& config,
    RngStream& rng) {
  return design_hybrid(inputs, config, rng, false);
}

std::pair<arma::cx_mat, arma::cx_mat> design_fully_digital(
    const arma::cx_mat& channel, int n_s, double total_power) {
  if (n_s < 1 ||
      static_cast<arma::uword>(n_s) > std::min(channel.n_rows, channel.n_cols))
    throw std::invalid_argument("design_fully_digital: invalid n_s");
  if (!(total_power > 0.0))
    throw std::invalid_argument("design_fully_digital: total_power must be > 0");

  arma::cx_mat left, right;
  arma::vec singular_values;
  if (!arma::svd_econ(left, singular_values, right, channel))
    throw std::runtime_error("design_fully_digital: SVD failed to converge");

  const arma::uword k = static_cast<arma::uword>(n_s) - 1;
  arma::cx_mat precoder = right.cols(0, k);
  precoder *= std::sqrt(static_cast<double>(n_s)) /
              arma::norm(precoder, "fro");
  return {std::move(precoder), left.cols(0, k)};
}

arma::cx_mat expected_channel(const PathSet& paths, const ArrayGeometry& tx,
                              const ArrayGeometry& rx,
                              const MisalignmentModel& aod_model,
                              const MisalignmentModel& aoa_model) {
  const arma::uword num_paths = paths.size();
  if (num_paths == 0)
    throw std::invalid_argument("expected_channel: empty path set");

  const arma::uword m_t = static_cast<arma::uword>(tx.num_elements);
  const arma::uword m_r = static_cast<arma::uword>(rx.num_elements);

  arma::cx_mat channel(m_r, m_t, arma::fill::zeros);
  for (arma::uword l = 0; l < num_paths; ++l) {
    const arma::cx_vec rx_response =
        expected_array_response(rx, paths.aoa_est(l), aoa_model).vector;
    const arma::cx_vec tx_response =
        expected_array_response(tx, paths.aod_est(l), aod_model).vector;
    channel += paths.gains(l) * rx_response * tx_response.t();
  }
  channel *= std::sqrt(static_cast<double>(m_t) * static_cast<double>(m_r) /
                       static_cast<double>(num_paths));
  return channel;
}

arma::cx_mat estimated_channel(const PathSet& paths, const ArrayGeometry& tx,
                               const ArrayGeometry& rx) {
  const arma::uword num_paths = paths.size();
  if (num_paths == 0)
    throw std::invalid_argument("estimated_channel: empty path set");

  const arma::uword m_t = static_cast<arma::uword>(tx.num_elements);
  const arma::uword m_r = static_cast<arma::uword>(rx.num_elements);

  arma::cx_mat channel(m_r, m_t, arma::fill::zeros);
  for (arma::uword l = 0; l < num_paths; ++l) {
    const arma::cx_vec rx_response = array_response(rx, paths.aoa_est(l));
    const arma::cx_vec tx_response = array_response(tx, paths.aod_est(l));
    channel += paths.gains(l) * rx_response * tx_response.t();
  }
  channel *= std::sqrt(static_cast<double>(m_t) * static_cast<double>(m_r) /
                       static_cast<double>(num_paths));
  return channel;
}

}  // namespace robustbf
