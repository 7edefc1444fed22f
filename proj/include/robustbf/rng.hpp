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

#include <complex>
#include <cstdint>
#include <initializer_list>
#include <random>

namespace robustbf {

// splitmix64 finalizer, used to mix seed material into stream keys
inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Deterministic random stream. All draws are fully specified by the seed
/// (mt19937_64 plus explicit conversions), so sequences are identical across
/// platforms and runs.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) : gen_(seed) {}

  /// Uniform on [0, 1), 53-bit resolution.
  double uniform01() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  /// Uniform on [lo, hi).
  double uniform(double lo, double hi) { return lo + uniform01() * (hi - lo); }

  /// Standard normal via Box-Muller (consumes two uniforms).
  double standard_normal() {
    const double u1 = 1.0 - uniform01();  // (0, 1], keeps log finite
    const double u2 = uniform01();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(two_pi * u2);
  }

  /// Circularly-symmetric complex Gaussian with E[|z|^2] = variance.
  std::complex<double> complex_normal(double variance) {
    const double u1 = 1.0 - uniform01();
    const double u2 = uniform01();
    const double r = std::sqrt(-variance * std::log(u1));
    return {r * std::cos(two_pi * u2), r * std::sin(two_pi * u2)};
  }

 private:
  static constexpr double two_pi = 6.283185307179586476925286766559;
  std::mt19937_64 gen_;
};

/// Substream keyed by (master_seed, path). The same key always yields the
/// same stream no matter how many other streams were created or consumed,
/// which is what makes trial-parallel runs order-independent.
inline RngStream derive_stream(std::uint64_t master_seed,
                               std::initializer_list<std::uint64_t> path) {
  std::uint64_t key = mix64(master_seed);
  for (std::uint64_t p : path) key = mix64(key ^ mix64(p));
  return RngStream(key);
}

}  // namespace robustbf
