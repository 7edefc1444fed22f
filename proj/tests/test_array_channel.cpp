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

#include <algorithm>
#include <catch2/catch_amalgamated.hpp>
#include <cmath>

#include "robustbf/array_channel.hpp"

using namespace robustbf;

namespace {
constexpr double kPi = 3.1415926535897932384626433832795;
}

TEST_CASE("array_response at broadside is flat") {
  // cos(pi/2) = 0: every element is 1/sqrt(4) = 0.5 with zero phase
  const arma::cx_vec v = array_response(ArrayGeometry{4, 0.5}, kPi / 2.0);
  REQUIRE(v.n_elem == 4);
  for (const auto& e : v) {
    CHECK(std::abs(e.real() - 0.5) < 1e-12);
    CHECK(std::abs(e.imag()) < 1e-12);
  }
}

TEST_CASE("array_response at endfire alternates sign") {
  // theta = 0: phase step pi per element, exp(j*pi) = -1
  const arma::cx_vec v = array_response(ArrayGeometry{2, 0.5}, 0.0);
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  CHECK(std::abs(v(0) - inv_sqrt2) < 1e-12);
  CHECK(std::abs(v(1) + inv_sqrt2) < 1e-12);
}

TEST_CASE("array_response matches scalar re-evaluation") {
  const ArrayGeometry geom{8, 0.5};
  const double theta = kPi / 3.0;
  const arma::cx_vec v = array_response(geom, theta);
  for (int m = 0; m < 8; ++m) {
    const double phase = 2.0 * kPi * 0.5 * m * std::cos(theta);
    const std::complex<double> want(std::cos(phase) / std::sqrt(8.0),
                                    std::sin(phase) / std::sqrt(8.0));
    CHECK(std::abs(v(m) - want) < 1e-12);
  }
}

TEST_CASE("array_response is unit norm and depends on theta through cos") {
  RngStream rng = derive_stream(3, {0});
  for (int i = 0; i < 50; ++i) {
    const int m = 1 + static_cast<int>(rng.uniform(0.0, 64.0));
    const double theta = rng.uniform(-2.0 * kPi, 2.0 * kPi);
    const ArrayGeometry geom{m, 0.5};
    const arma::cx_vec v = array_response(geom, theta);
    CHECK(std::abs(arma::norm(v) - 1.0) < 1e-12);
    // -theta has the same cosine, hence the same response
    const arma::cx_vec w = array_response(geom, -theta);
    CHECK(arma::norm(v - w) < 1e-12);
  }
}

TEST_CASE("array_response rejects invalid geometry") {
  CHECK_THROWS_AS(array_response(ArrayGeometry{0, 0.5}, 0.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(array_response(ArrayGeometry{4, 0.0}, 0.0),
                  std::invalid_argument);
}

TEST_CASE("misalignment model derives its bound") {
  const MisalignmentModel model(0.02);
  CHECK(model.bound() == std::sqrt(3.0) * 0.02);
  CHECK_THROWS_AS(MisalignmentModel(-1.0), std::invalid_argument);

  const MisalignmentModel zero;
  RngStream rng = derive_stream(1, {2});
  for (int i = 0; i < 20; ++i) CHECK(sample_misalignment(zero, rng) == 0.0);
}

TEST_CASE("misalignment samples stay in band and match the uniform law") {
  const MisalignmentModel model = MisalignmentModel::from_degrees(1.154);
  const double beta = model.bound();
  CHECK(std::abs(beta - 2.0 * kPi / 180.0) < 1e-4);  // ~2 degrees

  RngStream rng = derive_stream(17, {5});
  const int n = 100000;
  std::vector<double> samples(n);
  double sum = 0.0, sum_sq = 0.0;
  for (int i = 0; i < n; ++i) {
    const double d = sample_misalignment(model, rng);
    REQUIRE(std::abs(d) <= beta);
    samples[i] = d;
    sum += d;
    sum_sq += d * d;
  }
  const double mean = sum / n;
  const double variance = sum_sq / n - mean * mean;
  const double delta_sq = model.delta_std() * model.delta_std();
  // LLN: mean within 3 standard errors, variance within 5%
  CHECK(std::abs(mean) < 3.0 * model.delta_std() / std::sqrt(double(n)));
  CHECK(std::abs(variance - delta_sq) < 0.05 * delta_sq);

  // Kolmogorov-Smirnov distance against the uniform CDF
  std::sort(samples.begin(), samples.end());
  double ks = 0.0;
  for (int i = 0; i < n; ++i) {
    const double cdf = (samples[i] + beta) / (2.0 * beta);
    ks = std::max(ks, std::abs(cdf - (i + 1.0) / n));
    ks = std::max(ks, std::abs(cdf - double(i) / n));
  }
  CHECK(ks < 0.01);
}

TEST_CASE("draw_paths honors the error bound per side") {
  const MisalignmentModel model = MisalignmentModel::from_degrees(1.154);
  RngStream rng = derive_stream(11, {3});
  const PathSet paths = draw_paths(10, 1.0, model, model, rng);
  REQUIRE(paths.size() == 10);
  REQUIRE(paths.aod_true.n_elem == 10);
  REQUIRE(paths.aoa_true.n_elem == 10);
  REQUIRE(paths.aod_est.n_elem == 10);
  REQUIRE(paths.aoa_est.n_elem == 10);
  for (arma::uword l = 0; l < 10; ++l) {
    CHECK(std::abs(paths.aod_est(l) - paths.aod_true(l)) <= model.bound());
    CHECK(std::abs(paths.aoa_est(l) - paths.aoa_true(l)) <= model.bound());
    CHECK(paths.aod_true(l) >= 0.0);
    CHECK(paths.aod_true(l) <= kPi);
  }
}

TEST_CASE("draw_paths with zero spread reproduces the true angles") {
  const MisalignmentModel zero;
  RngStream rng = derive_stream(11, {4});
  const PathSet paths = draw_paths(1, 1.0, zero, zero, rng);
  CHECK(paths.aod_est(0) == paths.aod_true(0));
  CHECK(paths.aoa_est(0) == paths.aoa_true(0));
}

TEST_CASE("draw_paths rejects bad parameters") {
  const MisalignmentModel zero;
  RngStream rng = derive_stream(11, {6});
  CHECK_THROWS_AS(draw_paths(0, 1.0, zero, zero, rng), std::invalid_argument);
  CHECK_THROWS_AS(draw_paths(2, 0.0, zero, zero, rng), std::invalid_argument);
}

TEST_CASE("path gains carry the requested variance") {
  const MisalignmentModel zero;
  RngStream rng = derive_stream(21, {0});
  const int draws = 10000;  // x10 paths = 1e5 gains
  double power = 0.0;
  for (int i = 0; i < draws; ++i) {
    const PathSet paths = draw_paths(10, 1.0, zero, zero, rng);
    power += arma::accu(arma::square(arma::abs(paths.gains)));
  }
  power /= draws * 10.0;
  CHECK(std::abs(power - 1.0) < 0.05);
}

TEST_CASE("single unit-gain path gives a channel of known norm") {
  PathSet paths;
  paths.gains = {std::complex<double>(1.0, 0.0)};
  paths.aod_true = {0.7};
  paths.aoa_true = {1.9};
  paths.aod_est = {0.7};
  paths.aoa_est = {1.9};
  const auto realization =
      build_channel(paths, ArrayGeometry{16, 0.5}, ArrayGeometry{8, 0.5});
  REQUIRE(realization.matrix.n_rows == 8);
  REQUIRE(realization.matrix.n_cols == 16);
  // rank-1 outer product of unit vectors scaled by sqrt(M_t*M_r/1)
  CHECK(std::abs(arma::norm(realization.matrix, "fro") -
                 std::sqrt(16.0 * 8.0)) < 1e-9);
}

TEST_CASE("channel has the documented shape at full scale") {
  const MisalignmentModel model = MisalignmentModel::from_degrees(1.154);
  RngStream rng = derive_stream(31, {1});
  const PathSet paths = draw_paths(10, 1.0, model, model, rng);
  const auto realization =
      build_channel(paths, ArrayGeometry{128, 0.5}, ArrayGeometry{72, 0.5});
  CHECK(realization.matrix.n_rows == 72);
  CHECK(realization.matrix.n_cols == 128);
}

TEST_CASE("mean channel energy matches the independence calculation") {
  // E||H||_F^2 = M_t * M_r * gain_variance for i.i.d. zero-mean gains
  const MisalignmentModel model = MisalignmentModel::from_degrees(1.154);
  RngStream rng = derive_stream(31, {2});
  const ArrayGeometry tx{8, 0.5}, rx{4, 0.5};
  const int draws = 10000;
  double energy = 0.0;
  for (int i = 0; i < draws; ++i) {
    const PathSet paths = draw_paths(5, 1.0, model, model, rng);
    const auto realization = build_channel(paths, tx, rx);
    const double norm = arma::norm(realization.matrix, "fro");
    energy += norm * norm;
  }
  energy /= draws;
  CHECK(std::abs(energy - 8.0 * 4.0) < 0.03 * 8.0 * 4.0);
}

TEST_CASE("stored matrix equals its reconstruction from the paths") {
  const MisalignmentModel model = MisalignmentModel::from_degrees(2.0);
  RngStream rng = derive_stream(31, {3});
  const ArrayGeometry tx{16, 0.5}, rx{8, 0.5};
  const PathSet paths = draw_paths(4, 1.0, model, model, rng);
  const auto first = build_channel(paths, tx, rx);
  const auto second = build_channel(first.paths, tx, rx);
  // identical inputs take the identical code path: bit-for-bit equal
  REQUIRE(first.matrix.n_elem == second.matrix.n_elem);
  for (arma::uword i = 0; i < first.matrix.n_elem; ++i)
    CHECK(first.matrix(i) == second.matrix(i));
}

TEST_CASE("channel rank never exceeds the path count") {
  const MisalignmentModel model = MisalignmentModel::from_degrees(1.154);
  RngStream rng = derive_stream(31, {4});
  for (int i = 0; i < 10; ++i) {
    const PathSet paths = draw_paths(3, 1.0, model, model, rng);
    const auto realization =
        build_channel(paths, ArrayGeometry{16, 0.5}, ArrayGeometry{8, 0.5});
    const arma::vec s = arma::svd(realization.matrix);
    CHECK(arma::rank(realization.matrix, 1e-9 * s.max()) <= 3);
  }
}
