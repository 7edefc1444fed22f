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

#include <armadillo>

#include "robustbf/array_channel.hpp"

namespace robustbf {

/// Transmit side steers along departure angles, receive side along arrival
/// angles.
enum class ArraySide { transmitter, receiver };

/// Element-wise expectation of the steering vector over the alignment-error
/// distribution, evaluated at the estimated angle.
struct ExpectedResponse {
  arma::cx_vec vector;
  double theta_est = 0.0;
  double bound = 0.0;  // error-law half-width used
};

/// Orthonormal dominant basis of a response matrix, plus the singular
/// values it was cut from (diagnostics).
struct BasisMatrix {
  arma::cx_mat matrix;  // M x n_rf, orthonormal columns
  arma::vec singular_values;
};

/// Closed-form expected ULA response under the uniform error law:
/// element m is (1/sqrt(M)) * exp(j*pi*(m-1)*cos(theta_est))
///                          * sinc((m-1) * bound * sin(theta_est)),
/// with sinc(x) = sin(pi*x)/(pi*x). Valid for half-wavelength spacing only;
/// other spacings throw. At bound = 0 this reduces exactly to
/// array_response(geom, theta_est).
ExpectedResponse expected_array_response(const ArrayGeometry& geom,
                                         double theta_est,
                                         const MisalignmentModel& model);

/// Gain-weighted expected-response matrix: row l is
/// conj(gain_l) * expected_response(theta_est_l)^H for the side's estimated
/// angles (L x M).
arma::cx_mat build_expected_response_matrix(const PathSet& paths,
                                            ArraySide side,
                                            const ArrayGeometry& geom,
                                            const MisalignmentModel& model);

/// Same weighting but with the nominal steering vector at the estimated
/// angle, i.e. the error statistics ignored.
arma::cx_mat build_nominal_response_matrix(const PathSet& paths,
                                           ArraySide side,
                                           const ArrayGeometry& geom);

/// First n_rf right singular vectors of A, descending singular values.
/// When n_rf exceeds rank(A) the extra columns are the decomposition's
/// orthonormal null-space completion.
BasisMatrix dominant_basis(const arma::cx_mat& response_matrix, int n_rf);

}  // namespace robustbf
