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

#include "robustbf/rng.hpp"

namespace robustbf {

/// Uniform linear array: element count and spacing in wavelength units.
struct ArrayGeometry {
  int num_elements = 1;
  double spacing_wavelengths = 0.5;
};

void validate(const ArrayGeometry& geom);

/// Uniform beam-alignment error law: zero-mean, standard deviation
/// delta_std, supported on [-bound, bound] with bound = sqrt(3) * delta_std.
class MisalignmentModel {
 public:
  MisalignmentModel() = default;
  explicit MisalignmentModel(double delta_std_rad);

  static MisalignmentModel from_degrees(double delta_std_deg);

  double delta_std() const { return delta_std_; }
  double bound() const { return bound_; }

 private:
  double delta_std_ = 0.0;
  double bound_ = 0.0;
};

/// One sparse multipath draw: complex gains plus true and estimated
/// departure/arrival angles (radians). All vectors share the path count.
struct PathSet {
  arma::cx_vec gains;
  arma::vec aod_true;
  arma::vec aoa_true;
  arma::vec aod_est;
  arma::vec aoa_est;

  arma::uword size() const { return gains.n_elem; }
};

/// Dense channel matrix together with the path data it was built from.
struct ChannelRealization {
  arma::cx_mat matrix;  // M_r x M_t
  PathSet paths;
};

/// Unit-norm ULA steering vector: element m (1-based) is
/// (1/sqrt(M)) * exp(j * 2*pi * (d/lambda) * (m-1) * cos(theta)).
arma::cx_vec array_response(const ArrayGeometry& geom, double theta);

/// One alignment-error draw, uniform on [-bound, bound].
double sample_misalignment(const MisalignmentModel& model, RngStream& rng);

/// Draws num_paths paths: gains i.i.d. CN(0, gain_variance), true angles
/// i.i.d. uniform on [0, pi], estimated angles = true + per-side error.
PathSet draw_paths(int num_paths, double gain_variance,
                   const MisalignmentModel& aod_model,
                   const MisalignmentModel& aoa_model, RngStream& rng);

/// Assembles the sparse channel from the TRUE angles:
/// H = sqrt(M_t*M_r/L) * sum_l gain_l * a_rx(aoa_l) * a_tx(aod_l)^H.
ChannelRealization build_channel(const PathSet& paths, const ArrayGeometry& tx,
                                 const ArrayGeometry& rx);

}  // namespace robustbf
