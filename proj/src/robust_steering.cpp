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

#include "robustbf/robust_steering.hpp"

#include <cmath>
#include <stdexcept>

namespace robustbf {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;
constexpr double kPi = 3.1415926535897932384626433832795;

// sin(pi*x)/(pi*x) with the x = 0 limit
double sinc(double x) {
  if (x == 0.0) return 1.0;
  const double px = kPi * x;
  return std::sin(px) / px;
}

}  // namespace

ExpectedResponse expected_array_response(const ArrayGeometry& geom,
                                         double theta_est,
                                         const MisalignmentModel& model) {
  validate(geom);
  if (geom.spacing_wavelengths != 0.5)
    throw std::invalid_argument(
        "expected_array_response: closed form requires half-wavelength "
        "spacing (spacing_wavelengths == 0.5)");
  if (!std::isfinite(theta_est))
    throw std::invalid_argument("expected_array_response: theta must be finite");

  const arma::uword m = static_cast<arma::uword>(geom.num_elements);
  const double scale = 1.0 / std::sqrt(static_cast<double>(m));
  const double phase_unit = kTwoPi * geom.spacing_wavelengths;  // == pi
  const double cos_theta = std::cos(theta_est);
  const double sin_theta = std::sin(theta_est);
  const double bound = model.bound();

  ExpectedResponse result;
  result.theta_est = theta_est;
  result.bound = bound;
  result.vector.set_size(m);
  for (arma::uword i = 0; i < m; ++i) {
    const double phase = phase_unit * static_cast<double>(i) * cos_theta;
    // sinc can be negative, so it cannot go through std::polar's magnitude
    const double attenuation = sinc(static_cast<double>(i) * bound * sin_theta);
    result.vector(i) = attenuation * std::polar(scale, phase);
  }
  return result;
}

namespace {

template <typename ResponseFn>
arma::cx_mat weighted_response_matrix(const PathSet& paths, ArraySide side,
                                      const ArrayGeometry& geom,
                                      ResponseFn&& response) {
  const arma::vec& angles =
      side == ArraySide::transmitter ? paths.aod_est : paths.aoa_est;
  const arma::uword num_paths = paths.size();
  if (angles.n_elem != num_paths)
    throw std::invalid_argument(
        "response matrix: estimated angles missing for requested side");

  arma::cx_mat weighted(num_paths, static_cast<arma::uword>(geom.num_elements));
  for (arma::uword l = 0; l < num_paths; ++l) {
    const arma::cx_vec steer = response(angles(l));
    weighted.row(l) = std::conj(paths.gains(l)) * steer.t();
  }
  return weighted;
}

}  // namespace

arma::cx_mat build_expected_response_matrix(const PathSet& paths,
                                            ArraySide side,
                                            const ArrayGeometry& geom,
                                            const MisalignmentModel& model) {
  return weighted_response_matrix(paths, side, geom, [&](double theta) {
    return expected_array_response(geom, theta, model).vector;
  });
}

arma::cx_mat build_nominal_response_matrix(const PathSet& paths,
                                           ArraySide side,
                                           const ArrayGeometry& geom) {
  return weighted_response_matrix(paths, side, geom, [&](double theta) {
    return array_response(geom, theta);
  });
}

BasisMatrix dominant_basis(const arma::cx_mat& response_matrix, int n_rf) {
  const arma::uword m = response_matrix.n_cols;
  if (n_rf < 1 || static_cast<arma::uword>(n_rf) > m)
    throw std::invalid_argument(
        "dominant_basis: n_rf must satisfy 1 <= n_rf <= matrix columns");

  arma::cx_mat left, right;
  arma::vec singular_values;
  // full SVD: the right factor is M x M, so null-space columns are
  // available when n_rf exceeds the rank
  if (!arma::svd(left, singular_values, right, response_matrix, "std"))
    throw std::runtime_error("dominant_basis: SVD failed to converge");

  BasisMatrix basis;
  basis.matrix = right.cols(0, static_cast<arma::uword>(n_rf) - 1);
  basis.singular_values = singular_values;
  return basis;
}

}  // namespace robustbf
