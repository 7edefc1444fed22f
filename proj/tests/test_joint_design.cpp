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

#include <catch2/catch_amalgamated.hpp>
#include <cmath>

#include "robustbf/joint_design.hpp"
#include "robustbf/metrics.hpp"

using namespace robustbf;

namespace {

arma::cx_mat random_matrix(arma::uword rows, arma::uword cols,
                           RngStream& rng) {
  arma::cx_mat m(rows, cols);
  for (auto& v : m) v = rng.complex_normal(1.0);
  return m;
}

DesignInputs make_inputs(int m_t, int m_r, int n_s, int n_rf, int num_paths,
                         double delta_deg, std::uint64_t seed) {
  DesignInputs inputs;
  inputs.tx = ArrayGeometry{m_t, 0.5};
  inputs.rx = ArrayGeometry{m_r, 0.5};
  inputs.aod_model = MisalignmentModel::from_degrees(delta_deg);
  inputs.aoa_model = MisalignmentModel::from_degrees(delta_deg);
  RngStream rng = derive_stream(seed, {0});
  inputs.paths = draw_paths(num_paths, 1.0, inputs.aod_model,
                            inputs.aoa_model, rng);
  inputs.n_s = n_s;
  inputs.n_rf_t = n_rf;
  inputs.n_rf_r = n_rf;
  inputs.channel = build_channel(inputs.paths, inputs.tx, inputs.rx).matrix;
  return inputs;
}

}  // namespace

TEST_CASE("effective_channel reduces to the channel under identity factors") {
  RngStream rng = derive_stream(13, {1});
  const arma::cx_mat channel = random_matrix(4, 4, rng);
  const arma::cx_mat eye = arma::eye<arma::cx_mat>(4, 4);
  CHECK(arma::norm(effective_channel(eye, eye, channel, eye, eye) - channel,
                   "fro") == 0.0);
}

TEST_CASE("effective_channel has the RF-chain shape and the stated product") {
  RngStream rng = derive_stream(13, {2});
  const arma::cx_mat channel = random_matrix(12, 16, rng);
  const arma::cx_mat w_rf = random_matrix(12, 8, rng);
  const arma::cx_mat w_inner = random_matrix(8, 8, rng);
  const arma::cx_mat f_rf = random_matrix(16, 8, rng);
  const arma::cx_mat f_inner = random_matrix(8, 8, rng);

  const arma::cx_mat h_eff =
      effective_channel(w_inner, w_rf, channel, f_rf, f_inner);
  REQUIRE(h_eff.n_rows == 8);
  REQUIRE(h_eff.n_cols == 8);

  // element-by-element re-multiplication in a different association order
  const arma::cx_mat direct =
      (w_inner.t() * w_rf.t()) * channel * (f_rf * f_inner);
  CHECK(arma::norm(h_eff - direct, "fro") < 1e-12 * arma::norm(direct, "fro"));

  CHECK_THROWS_AS(effective_channel(w_inner, w_rf, channel, f_inner, f_rf),
                  std::invalid_argument);
}

TEST_CASE("second_stage selects dominant coordinates of a diagonal channel") {
  arma::cx_mat h_eff(3, 3, arma::fill::zeros);
  h_eff(0, 0) = 3.0;
  h_eff(1, 1) = 2.0;
  h_eff(2, 2) = 1.0;
  const auto [f_second, w_second] = second_stage(h_eff, 2);
  REQUIRE(f_second.n_cols == 2);
  for (int i = 0; i < 2; ++i) {
    CHECK(std::abs(std::abs(f_second(i, i)) - 1.0) < 1e-12);
    CHECK(std::abs(std::abs(w_second(i, i)) - 1.0) < 1e-12);
  }
  CHECK(std::abs(f_second(2, 0)) < 1e-12);
  CHECK(std::abs(f_second(2, 1)) < 1e-12);
}

TEST_CASE("second_stage diagonalizes whatever it is given") {
  // degenerate spectrum: only the diagonalization property is asserted
  const arma::cx_mat eye = arma::eye<arma::cx_mat>(4, 4);
  const auto [f_eye, w_eye] = second_stage(eye, 2);
  arma::cx_mat coupled = w_eye.t() * eye * f_eye;
  coupled(0, 0) = coupled(1, 1) = 0.0;
  CHECK(arma::norm(coupled, "fro") < 1e-12);

  RngStream rng = derive_stream(13, {3});
  const arma::cx_mat h_eff = random_matrix(8, 8, rng);
  const auto [f_second, w_second] = second_stage(h_eff, 4);
  const arma::vec singulars = arma::svd(h_eff);
  arma::cx_mat diag = w_second.t() * h_eff * f_second;
  double retained = 0.0;
  for (int i = 0; i < 4; ++i) retained += std::abs(diag(i, i));
  CHECK(std::abs(retained - arma::accu(singulars.head(4))) < 1e-9);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      if (i != j) CHECK(std::abs(diag(i, j)) < 1e-9 * singulars(0));
}

TEST_CASE("finalize_precoder pins the transmit power") {
  RngStream rng = derive_stream(13, {4});
  const int n_s = 2;
  const arma::cx_mat f_rf = random_phase_matrix(16, 4, 0.25, rng);
  const arma::cx_mat f_inner = random_matrix(4, 4, rng);
  const arma::cx_mat f_second = random_matrix(4, n_s, rng);

  const arma::cx_mat digital = finalize_precoder(f_rf, f_inner, f_second, n_s);
  const double power = arma::norm(f_rf * digital, "fro");
  CHECK(std::abs(power * power - n_s) < 1e-9);

  // scaling either digital stage cannot change the normalized result
  const arma::cx_mat scaled =
      finalize_precoder(f_rf, arma::cx_mat(7.0 * f_inner), f_second, n_s);
  CHECK(arma::norm(digital - scaled, "fro") < 1e-12);

  // pre-normalized product passes through untouched
  arma::cx_mat unit_inner = f_inner, unit_second = f_second;
  const double norm0 = arma::norm(f_rf * (f_inner * f_second), "fro");
  unit_second *= std::sqrt(double(n_s)) / norm0;
  const arma::cx_mat through =
      finalize_precoder(f_rf, unit_inner, unit_second, n_s);
  CHECK(arma::norm(through - unit_inner * unit_second, "fro") < 1e-12);

  CHECK_THROWS_AS(finalize_precoder(f_rf, f_inner,
                                    arma::cx_mat(4, n_s, arma::fill::zeros),
                                    n_s),
                  std::runtime_error);
}

TEST_CASE("robust design produces the documented shapes at full scale") {
  DesignInputs inputs = make_inputs(128, 72, 4, 8, 10, 1.154, 404);
  RngStream rng = derive_stream(404, {1});
  const auto [precoder, combiner] = design_robust(inputs, JointDesignConfig{}, rng);

  CHECK(precoder.analog.n_rows == 128);
  CHECK(precoder.analog.n_cols == 8);
  CHECK(precoder.digital.n_rows == 8);
  CHECK(precoder.digital.n_cols == 4);
  CHECK(combiner.analog.n_rows == 72);
  CHECK(combiner.analog.n_cols == 8);
  CHECK(combiner.digital.n_rows == 8);
  CHECK(combiner.digital.n_cols == 4);

  const double c_t = 1.0 / std::sqrt(128.0), c_r = 1.0 / std::sqrt(72.0);
  for (const auto& v : precoder.analog)
    CHECK(std::abs(std::abs(v) - c_t) <= 1e-12 * c_t);
  for (const auto& v : combiner.analog)
    CHECK(std::abs(std::abs(v) - c_r) <= 1e-12 * c_r);
  const double power = arma::norm(precoder.composite(), "fro");
  CHECK(std::abs(power * power - 4.0) < 1e-9);
}

TEST_CASE("robust and non-robust designs coincide at zero spread") {
  DesignInputs inputs = make_inputs(16, 8, 2, 4, 3, 0.0, 405);
  RngStream rng_a = derive_stream(405, {1});
  RngStream rng_b = derive_stream(405, {1});
  const auto [rp, rc] = design_robust(inputs, JointDesignConfig{}, rng_a);
  const auto [np, nc] = design_nonrobust(inputs, JointDesignConfig{}, rng_b);
  CHECK(arma::norm(rp.analog - np.analog, "fro") < 1e-12);
  CHECK(arma::norm(rp.digital - np.digital, "fro") < 1e-12);
  CHECK(arma::norm(rc.analog - nc.analog, "fro") < 1e-12);
  CHECK(arma::norm(rc.digital - nc.digital, "fro") < 1e-12);
}

TEST_CASE("robust and non-robust designs differ once errors are present") {
  DesignInputs inputs = make_inputs(16, 8, 2, 4, 3, 1.154, 406);
  RngStream rng_a = derive_stream(406, {1});
  RngStream rng_b = derive_stream(406, {1});
  const auto [rp, rc] = design_robust(inputs, JointDesignConfig{}, rng_a);
  const auto [np, nc] = design_nonrobust(inputs, JointDesignConfig{}, rng_b);
  CHECK(arma::abs(rp.analog - np.analog).max() > 1e-6);
}

TEST_CASE("design is deterministic given the stream key") {
  DesignInputs inputs = make_inputs(16, 8, 2, 4, 3, 1.154, 407);
  RngStream rng_a = derive_stream(407, {1});
  RngStream rng_b = derive_stream(407, {1});
  const auto [pa, ca] = design_robust(inputs, JointDesignConfig{}, rng_a);
  const auto [pb, cb] = design_robust(inputs, JointDesignConfig{}, rng_b);
  CHECK(arma::norm(pa.analog - pb.analog, "fro") == 0.0);
  CHECK(arma::norm(pa.digital - pb.digital, "fro") == 0.0);
  CHECK(arma::norm(ca.analog - cb.analog, "fro") == 0.0);
  CHECK(arma::norm(ca.digital - cb.digital, "fro") == 0.0);
}

TEST_CASE("returned second stages cancel inter-stream coupling") {
  DesignInputs inputs = make_inputs(32, 16, 2, 4, 5, 1.154, 408);
  RngStream rng = derive_stream(408, {1});
  const auto [precoder, combiner] = design_robust(inputs, JointDesignConfig{}, rng);

  // rebuild the design-side effective channel the second stages saw
  const arma::cx_mat surrogate = expected_channel(
      inputs.paths, inputs.tx, inputs.rx, inputs.aod_model, inputs.aoa_model);
  const arma::cx_mat h_eff =
      effective_channel(combiner.digital_inner, combiner.analog, surrogate,
                        precoder.analog, precoder.digital_inner);
  const arma::cx_mat coupled =
      combiner.digital_second.t() * h_eff * precoder.digital_second;
  const double sigma1 = arma::svd(h_eff).max();
  for (arma::uword i = 0; i < coupled.n_rows; ++i)
    for (arma::uword j = 0; j < coupled.n_cols; ++j)
      if (i != j) CHECK(std::abs(coupled(i, j)) <= 1e-9 * sigma1);
}

TEST_CASE("a second pass never hurts on average") {
  // the documented refinement property, at an instance where the second
  // stage has room to act (n_rf > n_s)
  double total_improvement = 0.0;
  const int seeds = 100;
  for (int seed = 0; seed < seeds; ++seed) {
    DesignInputs inputs =
        make_inputs(16, 8, 2, 4, 3, 1.154, 5000 + static_cast<std::uint64_t>(seed));
    JointDesignConfig one_pass;
    one_pass.passes = 1;
    JointDesignConfig two_pass;
    RngStream rng_a = derive_stream(5000 + seed, {2});
    RngStream rng_b = derive_stream(5000 + seed, {2});
    const auto [p1, c1] = design_robust(inputs, one_pass, rng_a);
    const auto [p2, c2] = design_robust(inputs, two_pass, rng_b);
    total_improvement +=
        spectral_efficiency(inputs.channel, p2.composite(), c2.composite(),
                            1.0, 1.0, 2) -
        spectral_efficiency(inputs.channel, p1.composite(), c1.composite(),
                            1.0, 1.0, 2);
  }
  CHECK(total_improvement / seeds >= -0.05);
}

TEST_CASE("a second pass is a no-op when every RF chain carries a stream") {
  // at n_rf == n_s the second stage is unitary, so the rate cannot move
  DesignInputs inputs = make_inputs(16, 8, 2, 2, 3, 1.154, 409);
  JointDesignConfig one_pass;
  one_pass.passes = 1;
  RngStream rng_a = derive_stream(409, {2});
  RngStream rng_b = derive_stream(409, {2});
  const auto [p1, c1] = design_robust(inputs, one_pass, rng_a);
  const auto [p2, c2] = design_robust(inputs, JointDesignConfig{}, rng_b);
  const double se1 = spectral_efficiency(inputs.channel, p1.composite(),
                                         c1.composite(), 1.0, 1.0, 2);
  const double se2 = spectral_efficiency(inputs.channel, p2.composite(),
                                         c2.composite(), 1.0, 1.0, 2);
  CHECK(std::abs(se1 - se2) < 1e-9);
}

TEST_CASE("fully digital design on a diagonal channel") {
  arma::cx_mat channel(3, 3, arma::fill::zeros);
  channel(0, 0) = 3.0;
  channel(1, 1) = 2.0;
  channel(2, 2) = 1.0;
  const auto [precoder, combiner] = design_fully_digital(channel, 1, 1.0);
  CHECK(std::abs(std::abs(precoder(0, 0)) - 1.0) < 1e-12);
  CHECK(std::abs(precoder(1, 0)) < 1e-12);
  const double power = arma::norm(precoder, "fro");
  CHECK(std::abs(power * power - 1.0) < 1e-12);
}

TEST_CASE("fully digital design diagonalizes a random channel") {
  RngStream rng = derive_stream(13, {5});
  const arma::cx_mat channel = random_matrix(6, 8, rng);
  const auto [precoder, combiner] = design_fully_digital(channel, 3, 1.0);
  const arma::cx_mat coupled = combiner.t() * channel * precoder;
  const double sigma1 = arma::svd(channel).max();
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      if (i != j) CHECK(std::abs(coupled(i, j)) < 1e-9 * sigma1);
  const double power = arma::norm(precoder, "fro");
  CHECK(std::abs(power * power - 3.0) < 1e-9);
}

TEST_CASE("surrogate channels collapse to the truth at zero error") {
  DesignInputs inputs = make_inputs(16, 8, 2, 4, 5, 0.0, 410);
  const arma::cx_mat expected = expected_channel(
      inputs.paths, inputs.tx, inputs.rx, inputs.aod_model, inputs.aoa_model);
  const arma::cx_mat estimated =
      estimated_channel(inputs.paths, inputs.tx, inputs.rx);
  CHECK(arma::norm(expected - inputs.channel, "fro") <
        1e-12 * arma::norm(inputs.channel, "fro"));
  CHECK(arma::norm(estimated - inputs.channel, "fro") <
        1e-12 * arma::norm(inputs.channel, "fro"));
}

TEST_CASE("robust fully digital benchmark matches perfect CSI at zero error") {
  DesignInputs inputs = make_inputs(16, 8, 2, 4, 4, 0.0, 411);
  const arma::cx_mat surrogate = expected_channel(
      inputs.paths, inputs.tx, inputs.rx, inputs.aod_model, inputs.aoa_model);
  const auto [rf, rw] = design_fully_digital(surrogate, 2, 1.0);
  const auto [nf, nw] = design_fully_digital(inputs.channel, 2, 1.0);
  // identical column spaces up to per-column phase
  for (int i = 0; i < 2; ++i) {
    CHECK(std::abs(std::abs(arma::cdot(rf.col(i), nf.col(i))) - 1.0) < 1e-9);
    CHECK(std::abs(std::abs(arma::cdot(rw.col(i), nw.col(i))) - 1.0) < 1e-9);
  }
}

TEST_CASE("design input validation catches ordering violations") {
  DesignInputs inputs = make_inputs(16, 8, 2, 4, 3, 1.0, 412);
  inputs.n_rf_t = 1;  // below n_s
  CHECK_THROWS_AS(validate(inputs), std::invalid_argument);
  inputs.n_rf_t = 32;  // above m_t
  CHECK_THROWS_AS(validate(inputs), std::invalid_argument);
  inputs.n_rf_t = 4;
  inputs.channel = arma::cx_mat(3, 3, arma::fill::ones);
  CHECK_THROWS_AS(validate(inputs), std::invalid_argument);
}
