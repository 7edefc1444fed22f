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

#include "robustbf/cmls_gp.hpp"

#include <cmath>
#include <stdexcept>

namespace robustbf {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;
constexpr double kStagnationGuard = 1e-14;

double sqnorm(const arma::cx_vec& v) { return std::real(arma::cdot(v, v)); }

arma::cx_vec project_modulus(const arma::cx_vec& x, double modulus) {
  arma::cx_vec projected(x.n_elem);
  for (arma::uword n = 0; n < x.n_elem; ++n)
    projected(n) = std::polar(modulus, std::arg(x(n)));
  return projected;
}

// exact line-search step given B d and the current residual B x - f
double step_from_parts(const arma::cx_vec& b_dir, const arma::cx_vec& res,
                       double dir_sqnorm) {
  const double denom = sqnorm(b_dir);
  if (denom <= kStagnationGuard * dir_sqnorm) return 0.0;
  return -std::real(arma::cdot(b_dir, res)) / denom;
}

}  // namespace

arma::cx_vec KronIdentityOperator::apply(const arma::cx_vec& x) const {
  const arma::cx_mat unknown(const_cast<arma::cx_double*>(x.memptr()), m_,
                             digital_.n_rows, false, true);
  return arma::vectorise(unknown * digital_);
}

arma::cx_vec KronIdentityOperator::apply_adjoint(const arma::cx_vec& y) const {
  const arma::cx_mat image(const_cast<arma::cx_double*>(y.memptr()), m_,
                           digital_.n_cols, false, true);
  return arma::vectorise(image * digital_.t());
}

arma::cx_mat kron_lift(const arma::cx_mat& digital, arma::uword m) {
  if (m < 1) throw std::invalid_argument("kron_lift: m must be >= 1");
  return arma::kron(digital.st(), arma::eye<arma::cx_mat>(m, m));
}

double residual(const CmlsProblem& problem, const arma::cx_vec& x) {
  if (x.n_elem != problem.design_matrix.n_cols)
    throw std::invalid_argument("residual: dimension mismatch");
  return sqnorm(problem.design_matrix * x - problem.target);
}

double line_search_step(const CmlsOperator& op, const arma::cx_vec& target,
                        const arma::cx_vec& x, const arma::cx_vec& direction) {
  const arma::cx_vec b_dir = op.apply(direction);
  const arma::cx_vec res = op.apply(x) - target;
  return step_from_parts(b_dir, res, sqnorm(direction));
}

GpResult gp_solve(const CmlsOperator& op, const arma::cx_vec& target,
                  double modulus, const GpConfig& config,
                  const arma::cx_vec& x0) {
  if (!(modulus > 0.0))
    throw std::invalid_argument("gp_solve: modulus must be > 0");
  if (config.max_iterations < 1 || !(config.eps_threshold > 0.0))
    throw std::invalid_argument("gp_solve: invalid configuration");
  if (x0.n_elem != op.cols() || target.n_elem != op.rows())
    throw std::invalid_argument("gp_solve: dimension mismatch");
  for (arma::uword n = 0; n < x0.n_elem; ++n)
    if (std::abs(std::abs(x0(n)) - modulus) > 1e-9 * modulus)
      throw std::invalid_argument("gp_solve: x0 is not constant-modulus");

  arma::cx_vec x = x0;
  arma::cx_vec res = op.apply(x) - target;
  double eps = sqnorm(res);

  arma::cx_vec grad = 2.0 * op.apply_adjoint(res);
  arma::cx_vec dir = -grad;

  GpResult result;
  result.solution = x;
  double best_eps = eps;
  result.trace.residuals.reserve(static_cast<size_t>(config.max_iterations) + 1);
  result.trace.residuals.push_back(eps);

  for (int t = 1; t <= config.max_iterations; ++t) {
    const arma::cx_vec b_dir = op.apply(dir);
    const double alpha = step_from_parts(b_dir, res, sqnorm(dir));
    const bool stagnant = (alpha == 0.0);

    x = project_modulus(x + alpha * dir, modulus);
    res = op.apply(x) - target;
    const double eps_next = sqnorm(res);

    result.trace.residuals.push_back(eps_next);
    result.trace.iterations_used = t;
    if (eps_next < best_eps) {
      best_eps = eps_next;
      result.solution = x;
    }
    if (stagnant) break;  // direction in the null space: nothing to descend

    const arma::cx_vec grad_next = 2.0 * op.apply_adjoint(res);
    const double grad_sqnorm = sqnorm(grad);
    // Polak-Ribiere ratio under the real-composite inner product
    const double beta =
        grad_sqnorm <= kStagnationGuard
            ? 0.0
            : std::real(arma::cdot(grad_next - grad, grad_next)) / grad_sqnorm;
    dir = -grad_next + beta * dir;
    grad = grad_next;

    if (std::abs(eps_next - eps) < config.eps_threshold) {
      result.trace.converged = true;
      break;
    }
    eps = eps_next;
  }
  return result;
}

GpResult gp_solve(const CmlsProblem& problem, const GpConfig& config,
                  const arma::cx_vec& x0) {
  const DenseOperator op(problem.design_matrix);
  return gp_solve(op, problem.target, problem.modulus, config, x0);
}

arma::cx_vec random_phase_vector(arma::uword n, double modulus,
                                 RngStream& rng) {
  arma::cx_vec v(n);
  for (arma::uword i = 0; i < n; ++i)
    v(i) = std::polar(modulus, rng.uniform(0.0, kTwoPi));
  return v;
}

arma::cx_mat random_phase_matrix(arma::uword rows, arma::uword cols,
                                 double modulus, RngStream& rng) {
  arma::cx_mat m(rows, cols);
  for (arma::uword c = 0; c < cols; ++c)
    for (arma::uword r = 0; r < rows; ++r)
      m(r, c) = std::polar(modulus, rng.uniform(0.0, kTwoPi));
  return m;
}

}  // namespace robustbf
