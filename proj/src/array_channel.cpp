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

#include "robustbf/array_channel.hpp"

#include <cmath>
#include <stdexcept>

namespace robustbf {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
constexpr double kPi = 3.1415926535897932384626433832795;
}  // namespace

void validate(const ArrayGeometry& geom) {
  if (geom.num_elements < 1)
    throw std::invalid_argument("ArrayGeometry: num_elements must be >= 1");
  if (!(geom.spacing_wavelengths > 0.0))
    throw std::invalid_argument("ArrayGeometry: spacing_wavelengths must be > 0");
}

MisalignmentModel::MisalignmentModel(double delta_std_rad) {
  if (!(delta_std_rad >= 0.0))
    throw std::invalid_argument("MisalignmentModel: delta_std must be >= 0");
  delta_std_ = delta_std_rad;
  bound_ = std::sqrt(3.0) * delta_std_rad;
}

MisalignmentModel MisalignmentModel::from_degrees(double delta_std_deg) {
  return MisalignmentModel(delta_std_deg * kPi / 180.0);
}

arma::cx_vec array_response(const ArrayGeometry& geom, double theta) {
  validate(geom);
  if (!std::isfinite(theta))
    throw std::invalid_argument("array_response: theta must be finite");

  const arma::uword m = static_cast<arma::uword>(geom.num_elements);
  const double scale = 1.0 / std::sqrt(static_cast<double>(m));
  // Grouped as (2*pi*spacing) * (m-1) * cos so the half-wavelength case
  // evaluates bit-identically to the closed-form robust response.
  const double phase_unit = kTwoPi * geom.spacing_wavelengths;
  const double cos_theta = std::cos(theta);

  arma::cx_vec response(m);
  for (arma::uword i = 0; i < m; ++i) {
    const double phase = phase_unit * static_cast<double>(i) * cos_theta;
    response(i) = std::polar(scale, phase);
  }
  return response;
}

double sample_misalignment(const MisalignmentModel& model, RngStream& rng) {
  return rng.uniform(-model.bound(), model.bound());
}

PathSet draw_paths(int num_paths, double gain_variance,
                   const MisalignmentModel& aod_model,
                   const MisalignmentModel& aoa_model, RngStream& rng) {
  if (num_paths < 1)
    throw std::invalid_argument("draw_paths: num_paths must be >= 1");
  if (!(gain_variance > 0.0))
    throw std::invalid_argument("draw_paths: gain_variance must be > 0");

  const arma::uword n = static_cast<arma::uword>(num_paths);
  PathSet paths;
  paths.gains.set_size(n);
  paths.aod_true.set_size(n);
  paths.aoa_true.set_size(n);
  paths.aod_est.set_size(n);
  paths.aoa_est.set_size(n);

  for (arma::uword l = 0; l < n; ++l) {
    paths.gains(l) = rng.complex_normal(gain_variance);
    paths.aod_true(l) = rng.uniform(0.0, kPi);
    paths.aoa_true(l) = rng.uniform(0.0, kPi);
    paths.aod_est(l) = paths.aod_true(l) + sample_misalignment(aod_model, rng);
    paths.aoa_est(l) = paths.aoa_true(l) + sample_misalignment(aoa_model, rng);
  }
  return paths;
}

ChannelRealization build_channel(const PathSet& paths, const ArrayGeometry& tx,
                                 const ArrayGeometry& rx) {
  validate(tx);
  validate(rx);
  const arma::uword num_paths = paths.size();
  if (num_paths == 0 || paths.aod_true.n_elem != num_paths ||
      paths.aoa_true.n_elem != num_paths)
    throw std::invalid_argument("build_channel: inconsistent path vectors");

  const arma::uword m_t = static_cast<arma::uword>(tx.num_elements);
  const arma::uword m_r = static_cast<arma::uword>(rx.num_elements);

  arma::cx_mat channel(m_r, m_t, arma::fill::zeros);
  for (arma::uword l = 0; l < num_paths; ++l) {
    const arma::cx_vec rx_response = array_response(rx, paths.aoa_true(l));
    const arma::cx_vec tx_response = array_response(tx, paths.aod_true(l));
    channel += paths.gains(l) * rx_response * tx_response.t();
  }
  channel *= std::sqrt(static_cast<double>(m_t) * static_cast<double>(m_r) /
                       static_cast<double>(num_paths));

  return ChannelRealization{std::move(channel), paths};
}

}  // namespace robustbf
