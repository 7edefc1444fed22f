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
#include <vector>

#include "robustbf/cmls_gp.hpp"
#include "robustbf/robust_steering.hpp"

namespace robustbf {

struct AltMinConfig {
  double eps_threshold = 1e-4;  // stop on |fit(t) - fit(t-1)| below this
  int max_iterations = 50;
};

struct FactorizationTrace {
  std::vector<double> residuals;              // fit after each analog+digital pair
  std::vector<double> pre_digital_residuals;  // fit after the analog update alone
  int iterations_used = 0;
  bool converged = false;
  bool rank_deficient = false;  // a least-squares step saw a rank-deficient analog
};

/// Constant-modulus analog factor and square digital factor approximating a
/// target matrix, plus the achieved squared Frobenius fit.
struct HybridFactor {
  arma::cx_mat analog;   // M x n_rf, every entry of modulus 1/sqrt(M)
  arma::cx_mat digital;  // n_rf x n_rf
  double fit_residual = 0.0;
  FactorizationTrace trace;
};

/// Least-squares digital factor for a fixed analog factor: the Moore-Penrose
/// solution pinv(analog) * target (minimum-norm when analog is rank
/// deficient). The residual is orthogonal to the analog column space.
arma::cx_mat digital_ls_update(const arma::cx_mat& analog,
                               const arma::cx_mat& target,
                               bool* rank_deficient = nullptr);

/// Alternating minimization of ||analog * digital - target||_F^2 with the
/// analog factor constant-modulus: closed-form least-squares digital update,
/// gradient-projection analog update warm-started from the previous analog
/// iterate. The analog factor is initialized from the target's phases, so
/// the result is deterministic given (target, configs).
HybridFactor factorize(const arma::cx_mat& target, int n_rf,
                       const GpConfig& gp_config,
                       const AltMinConfig& outer_config);

HybridFactor factorize(const BasisMatrix& target, int n_rf,
                       const GpConfig& gp_config,
                       const AltMinConfig& outer_config);

}  // namespace robustbf
