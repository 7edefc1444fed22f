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

#include "robustbf/rng.hpp"

namespace robustbf {

/// Constant-modulus least squares: minimize ||B x - f||_2^2 subject to
/// |x_n| = modulus for every n.
struct CmlsProblem {
  arma::cx_mat design_matrix;  // B
  arma::cx_vec target;         // f
  double modulus = 1.0;
};

struct GpConfig {
  double eps_threshold = 1e-6;  // stop when |eps(t+1) - eps(t)| drops below
  int max_iterations = 200;
};

struct GpTrace {
  std::vector<double> residuals;  // ||B x - f||^2 per iterate, x0 first
  int iterations_used = 0;
  bool converged = false;
};

struct GpResult {
  arma::cx_vec solution;
  GpTrace trace;
};

/// Matrix-free view of the design matrix. Lets the solver run on structured
/// operators (Kronecker-with-identity) without forming them densely.
class CmlsOperator {
 public:
  virtual ~CmlsOperator() = default;
  virtual arma::cx_vec apply(const arma::cx_vec& x) const = 0;          // B x
  virtual arma::cx_vec apply_adjoint(const arma::cx_vec& y) const = 0;  // B^H y
  virtual arma::uword rows() const = 0;
  virtual arma::uword cols() const = 0;
};

class DenseOperator final : public CmlsOperator {
 public:
  explicit DenseOperator(const arma::cx_mat& matrix) : matrix_(matrix) {}
  arma::cx_vec apply(const arma::cx_vec& x) const override { return matrix_ * x; }
  arma::cx_vec apply_adjoint(const arma::cx_vec& y) const override {
    return matrix_.t() * y;
  }
  arma::uword rows() const override { return matrix_.n_rows; }
  arma::uword cols() const override { return matrix_.n_cols; }

 private:
  const arma::cx_mat& matrix_;
};

/// Operator form of (D^T kron I_m): maps vec(X) to vec(X * D) for
/// m x rows(D) matrices X. Equivalent to kron_lift(D, m) without the
/// m^2-fold blowup.
class KronIdentityOperator final : public CmlsOperator {
 public:
  KronIdentityOperator(const arma::cx_mat& digital, arma::uword m)
      : digital_(digital), m_(m) {}
  arma::cx_vec apply(const arma::cx_vec& x) const override;
  arma::cx_vec apply_adjoint(const arma::cx_vec& y) const override;
  arma::uword rows() const override { return m_ * digital_.n_cols; }
  arma::uword cols() const override { return m_ * digital_.n_rows; }

 private:
  const arma::cx_mat& digital_;
  arma::uword m_;
};

/// Dense (D^T kron I_m). Satisfies kron_lift(D, m) * vec(X) == vec(X * D).
arma::cx_mat kron_lift(const arma::cx_mat& digital, arma::uword m);

/// ||B x - f||_2^2.
double residual(const CmlsProblem& problem, const arma::cx_vec& x);

/// Exact minimizer over real alpha of ||B (x + alpha d) - f||_2^2:
/// (Re{f^H B d} - Re{d^H B^H B x}) / (d^H B^H B d). Returns 0 when the
/// denominator falls below the stagnation guard.
double line_search_step(const CmlsOperator& op, const arma::cx_vec& target,
                        const arma::cx_vec& x, const arma::cx_vec& direction);

/// Gradient projection for the CMLS problem: conjugate-gradient descent with
/// exact line search and Polak-Ribiere direction updates, re-projecting each
/// iterate onto the constant-modulus set. x0 must be feasible. Returns the
/// best feasible iterate seen (never worse than x0).
GpResult gp_solve(const CmlsOperator& op, const arma::cx_vec& target,
                  double modulus, const GpConfig& config,
                  const arma::cx_vec& x0);

GpResult gp_solve(const CmlsProblem& problem, const GpConfig& config,
                  const arma::cx_vec& x0);

/// Feasible starting points: entries modulus * e^{j phi}, phases uniform.
arma::cx_vec random_phase_vector(arma::uword n, double modulus, RngStream& rng);
arma::cx_mat random_phase_matrix(arma::uword rows, arma::uword cols,
                                 double modulus, RngStream& rng);

}  // namespace robustbf
