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

#include "robustbf/hybrid_factorization.hpp"

#include <cmath>
#include <stdexcept>

namespace robustbf {

namespace {

double fit_sqnorm(const arma::cx_mat& analog, const arma::cx_mat& digital,
                  const arma::cx_mat& target) {
  const double n = arma::norm(analog * digital - target, "fro");
  return n * n;
}

arma::cx_mat phase_init(const arma::cx_mat& target, double modulus) {
  arma::cx_mat analog(target.n_rows, target.n_cols);
  for (arma::uword c = 0; c < target.n_cols; ++c)
    for (arma::uword r = 0; r < target.n_rows; ++r)
      analog(r, c) = std::polar(modulus, std::arg(target(r, c)));
  return analog;
}

}  // namespace

arma::cx_mat digital_ls_update(const arma::cx_mat& analog,
                               const arma::cx_mat& target,
                               bool* rank_deficient) {
  if (analog.n_rows != target.n_rows)
    throw std::invalid_argument("digital_ls_update: row mismatch");

  arma::cx_mat left, right;
  arma::vec singular_values;
  if (!arma::svd_econ(left, singular_values, right, analog))
    throw std::runtime_error("digital_ls_update: SVD failed to converge");

  // pseudo-inverse cutoff, same convention as arma::pinv
  const double tolerance = static_cast<double>(std::max(analog.n_rows,
                                                        analog.n_cols)) *
                           singular_values.max() *
                           std::numeric_limits<double>::epsilon();
  arma::uword rank = 0;
  for (arma::uword i = 0; i < singular_values.n_elem; ++i)
    if (singular_values(i) > tolerance) ++rank;
  if (rank_deficient != nullptr)
    *rank_deficient = rank < std::min(analog.n_rows, analog.n_cols);

  if (rank == 0) return arma::cx_mat(analog.n_cols, target.n_cols,
                                     arma::fill::zeros);

  arma::cx_mat projected = left.cols(0, rank - 1).t() * target;
  for (arma::uword i = 0; i < rank; ++i)
    projected.row(i) /= singular_values(i);
  return right.cols(0, rank - 1) * projected;
}

HybridFactor factorize(const arma::cx_mat& target, int n_rf,
                       const GpConfig& gp_config,
                       const AltMinConfig& outer_config) {
  if (n_rf < 1 || target.n_cols != static_cast<arma::uword>(n_rf))
    throw std::invalid_argument("factorize: target must have n_rf columns");
  if (outer_config.max_iterations < 1 || !(outer_config.eps_threshold > 0.0))
    throw std::invalid_argument("factorize: invalid configuration");

  const arma::uword m = target.n_rows;
  const double modulus = 1.0 / std::sqrt(static_cast<double>(m));

  HybridFactor factor;
  factor.analog = phase_init(target, modulus);
  bool rank_flag = false;
  factor.digital = digital_ls_update(factor.analog, target, &rank_flag);
  factor.trace.rank_deficient = rank_flag;

  double eps = fit_sqnorm(factor.analog, factor.digital, target);
  factor.trace.residuals.push_back(eps);

  const arma::cx_vec target_vec = arma::vectorise(target);
  for (int t = 1; t <= outer_config.max_iterations; ++t) {
    // analog update for the current digital factor, warm-started
    const KronIdentityOperator op(factor.digital, m);
    GpResult gp = gp_solve(op, target_vec, modulus, gp_config,
                           arma::vectorise(factor.analog));
    factor.analog = arma::reshape(gp.solution, m, factor.analog.n_cols);
    factor.trace.pre_digital_residuals.push_back(
        fit_sqnorm(factor.analog, factor.digital, target));

    // least-squares digital refit
    factor.digital = digital_ls_update(factor.analog, target, &rank_flag);
    factor.trace.rank_deficient |= rank_flag;

    const double eps_next = fit_sqnorm(factor.analog, factor.digital, target);
    factor.trace.residuals.push_back(eps_next);
    factor.trace.iterations_used = t;

    if (std::abs(eps_next - eps) < outer_config.eps_threshold) {
      factor.trace.converged = true;
      eps = eps_next;
      break;
    }
    eps = eps_next;
  }

  factor.fit_residual = eps;
  return factor;
}

HybridFactor factorize(const BasisMatrix& target, int n_rf,
                       const GpConfig& gp_config,
                       const AltMinConfig& outer_config) {
  return factorize(target.matrix, n_rf, gp_config, outer_config);
}

}  // namespace robustbf
