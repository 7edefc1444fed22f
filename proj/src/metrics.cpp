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

#include "robustbf/metrics.hpp"

#include <cmath>
#include <stdexcept>

namespace robustbf {

double spectral_efficiency(const arma::cx_mat& channel,
                           const arma::cx_mat& precoder,
                           const arma::cx_mat& combiner, double noise_variance,
                           double total_power, int n_s, bool* regularized) {
  if (precoder.n_rows != channel.n_cols || combiner.n_rows != channel.n_rows)
    throw std::invalid_argument("spectral_efficiency: dimension mismatch");
  if (precoder.n_cols != static_cast<arma::uword>(n_s) ||
      combiner.n_cols != static_cast<arma::uword>(n_s))
    throw std::invalid_argument("spectral_efficiency: need n_s stream columns");
  if (!(noise_variance > 0.0) || !(total_power > 0.0) || n_s < 1)
    throw std::invalid_argument("spectral_efficiency: invalid scalar inputs");

  const arma::cx_mat signal = combiner.t() * channel * precoder;  // n_s x n_s
  arma::cx_mat noise_cov = noise_variance * (combiner.t() * combiner);

  if (regularized != nullptr) *regularized = false;
  arma::cx_mat whitened;
  if (!arma::solve(whitened, noise_cov, signal,
                   arma::solve_opts::likely_sympd + arma::solve_opts::no_approx)) {
    noise_cov.diag() += 1e-12;
    if (regularized != nullptr) *regularized = true;
    if (!arma::solve(whitened, noise_cov, signal,
                     arma::solve_opts::likely_sympd +
                         arma::solve_opts::no_approx))
      throw std::runtime_error(
          "spectral_efficiency: noise covariance numerically degenerate");
  }

  // det(I + c * R_n^{-1} S S^H) == det(I + c * S^H R_n^{-1} S); the latter is
  // Hermitian PSD so the rate comes from its (clamped) eigenvalues
  arma::cx_mat quad = signal.t() * whitened;
  quad = 0.5 * (quad + quad.t());
  arma::vec eigenvalues;
  if (!arma::eig_sym(eigenvalues, quad))
    throw std::runtime_error("spectral_efficiency: eigendecomposition failed");

  const double stream_power = total_power / static_cast<double>(n_s);
  double rate = 0.0;
  for (arma::uword i = 0; i < eigenvalues.n_elem; ++i)
    rate += std::log2(1.0 + stream_power * std::max(eigenvalues(i), 0.0));
  return rate;
}

}  // namespace robustbf
