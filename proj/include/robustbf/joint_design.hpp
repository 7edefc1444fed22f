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
#include <utility>

#include "robustbf/array_channel.hpp"
#include "robustbf/hybrid_factorization.hpp"
#include "robustbf/robust_steering.hpp"

namespace robustbf {

/// Transmit chain: constant-modulus analog factor, composite digital factor,
/// and the two digital stages it is composed of.
struct HybridPrecoder {
  arma::cx_mat analog;          // M_t x n_rf_t, entries of modulus 1/sqrt(M_t)
  arma::cx_mat digital;         // n_rf_t x n_s, power-normalized composite
  arma::cx_mat digital_inner;   // n_rf_t x n_rf_t factorization stage
  arma::cx_mat digital_second;  // n_rf_t x n_s interference-cancelling stage

  arma::cx_mat composite() const { return analog * digital; }
};

/// Receive chain counterpart; the digital factor carries no power constraint.
struct HybridCombiner {
  arma::cx_mat analog;          // M_r x n_rf_r, entries of modulus 1/sqrt(M_r)
  arma::cx_mat digital;         // n_rf_r x n_s
  arma::cx_mat digital_inner;   // n_rf_r x n_rf_r
  arma::cx_mat digital_second;  // n_rf_r x n_s

  arma::cx_mat composite() const { return analog * digital; }
};

/// Everything a design sees: array geometries, estimated path data, error
/// models, and stream/RF-chain counts. The true channel rides along for
/// callers that evaluate or benchmark, but the hybrid designs themselves
/// work purely from the estimated quantities (a designer never knows the
/// true channel; the fully-digital perfect-CSI benchmark is the one
/// consumer that does).
struct DesignInputs {
  ArrayGeometry tx;
  ArrayGeometry rx;
  PathSet paths;
  MisalignmentModel aod_model;
  MisalignmentModel aoa_model;
  int n_s = 1;
  int n_rf_t = 1;
  int n_rf_r = 1;
  arma::cx_mat channel;  // M_r x M_t, true channel (not used by the designs)
};

void validate(const DesignInputs& inputs);

struct JointDesignConfig {
  GpConfig gp;
  AltMinConfig altmin;
  int passes = 2;  // outer refinement passes
};

/// Effective baseband channel between the digital stages:
/// W_inner^H * W_rf^H * H * F_rf * F_inner  (n_rf_r x n_rf_t).
arma::cx_mat effective_channel(const arma::cx_mat& w_inner,
                               const arma::cx_mat& w_rf,
                               const arma::cx_mat& channel,
                               const arma::cx_mat& f_rf,
                               const arma::cx_mat& f_inner);

/// Top-n_s right and left singular vectors of the effective channel:
/// (precoder stage, combiner stage). Diagonalizes the retained streams.
std::pair<arma::cx_mat, arma::cx_mat> second_stage(const arma::cx_mat& h_eff,
                                                   int n_s);

/// Composite digital precoder sqrt(n_s) * F_inner * F_second / ||F_rf *
/// F_inner * F_second||_F, which pins the transmit power:
/// ||F_rf * result||_F^2 == n_s.
arma::cx_mat finalize_precoder(const arma::cx_mat& f_rf,
                               const arma::cx_mat& f_inner,
                               const arma::cx_mat& f_second, int n_s);

/// Full two-pass joint design with the error statistics folded in: steering
/// bases from the expected responses, second stages driven by the expected
/// channel. Everything is computed from the estimated path data.
std::pair<HybridPrecoder, HybridCombiner> design_robust(
    const DesignInputs& inputs, const JointDesignConfig& config,
    RngStream& rng);

/// Same pipeline with the error statistics ignored: nominal steering at the
/// estimated angles and the plain channel reconstruction in the second
/// stages. Coincides with design_robust when the error spread is zero.
std::pair<HybridPrecoder, HybridCombiner> design_nonrobust(
    const DesignInputs& inputs, const JointDesignConfig& config,
    RngStream& rng);

/// Unconstrained benchmark: top-n_s singular-vector precoder/combiner of the
/// given channel matrix, precoder scaled to ||F||_F^2 = n_s.
std::pair<arma::cx_mat, arma::cx_mat> design_fully_digital(
    const arma::cx_mat& channel, int n_s, double total_power);

/// Surrogate channel assembled from expected responses at the ESTIMATED
/// angles; drives the robust second stages and the robust fully-digital
/// benchmark. Equals the true channel when the error spread is zero and the
/// estimates are exact.
arma::cx_mat expected_channel(const PathSet& paths, const ArrayGeometry& tx,
                              const ArrayGeometry& rx,
                              const MisalignmentModel& aod_model,
                              const MisalignmentModel& aoa_model);

/// Plain channel reconstruction from the ESTIMATED angles and known gains
/// (nominal steering, no error statistics); drives the non-robust second
/// stages.
arma::cx_mat estimated_channel(const PathSet& paths, const ArrayGeometry& tx,
                               const ArrayGeometry& rx);

}  // namespace robustbf
