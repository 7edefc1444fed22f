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

namespace robustbf {

/// Gaussian-signaling achievable rate in bits/s/Hz for the composite chain:
///   log2 det(I + (P/n_s) * R_n^{-1} * W^H H F F^H H^H W),
/// with R_n = noise_variance * W^H W, F/W the composite precoder/combiner.
/// A combiner without full column rank gets a 1e-12 ridge on R_n;
/// `regularized`, when given, reports whether the ridge was needed.
double spectral_efficiency(const arma::cx_mat& channel,
                           const arma::cx_mat& precoder,
                           const arma::cx_mat& combiner, double noise_variance,
                           double total_power, int n_s,
                           bool* regularized = nullptr);

}  // namespace robustbf
