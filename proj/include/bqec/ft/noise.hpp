// Copyright 2026 The bqec Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <string>

#include "bqec/errors.hpp"

namespace bqec::ft {

/// Independent per-location fault probabilities.
struct NoiseModel {
  double p_gate = 0;  // any unitary gate location (one- or two-qubit)
  double p_mem = 0;   // WAIT locations
  double p_prep = 0;  // PREP_ZERO / PREP_PLUS
  double p_meas = 0;  // MEAS_Z / MEAS_X
  double p_ebit = 0;  // PREP_EBIT; 0 means a perfect ebit source

  /// Gate, preparation and measurement share one rate.
  static NoiseModel standard(double p_gate, double p_mem) {
    return NoiseModel{p_gate, p_mem, p_gate, p_gate, 0.0};
  }

  void validate() const {
    auto check = [](double p, const char *name) {
      if (!(p >= 0.0 && p <= 1.0)) {
        throw ValidationError(std::string(name) + " must lie in [0, 1]");
      }
    };
    check(p_gate, "p_gate");
    check(p_mem, "p_mem");
    check(p_prep, "p_prep");
    check(p_meas, "p_meas");
    check(p_ebit, "p_ebit");
  }

  bool is_zero() const {
    return p_gate == 0 && p_mem == 0 && p_prep == 0 && p_meas == 0 && p_ebit == 0;
  }
};

inline constexpr std::uint64_t splitmix64_mix(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// SplitMix64 generator. Satisfies UniformRandomBitGenerator.
class SplitMix64 {
 public:
  using result_type = std::uint64_t;
  explicit SplitMix64(std::uint64_t seed = 0) : state_(seed) {
  }
  static constexpr result_type min() {
    return 0;
  }
  static constexpr result_type max() {
    return std::numeric_limits<result_type>::max();
  }
  result_type operator()() {
    state_ += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  /// Uniform double in [0, 1).
  double uniform() {
    return static_cast<double>((*this)() >> 11) * 0x1.0p-53;
  }
  /// Uniform integer in [0, n).
  std::uint32_t below(std::uint32_t n) {
    return static_cast<std::uint32_t>((((*this)() >> 32) * n) >> 32);
  }
  bool bernoulli(double p) {
    return uniform() < p;
  }

 private:
  std::uint64_t state_;
};

/// Seed of one trial, a pure function of (master seed, sweep point, trial index).
inline std::uint64_t trial_seed(std::uint64_t master, std::uint64_t point, std::uint64_t trial) {
  std::uint64_t s = splitmix64_mix(master);
  s = splitmix64_mix(s ^ (point * 0xd1b54a32d192ed03ULL));
  return splitmix64_mix(s ^ (trial * 0x8cb92ba72f3d8dd7ULL));
}

/// Number of failures before the next success for per-step probability p,
/// given log1p(-p). Returns a huge value when p == 0.
inline std::uint64_t geometric_skip(SplitMix64 &rng, double log_q) {
  if (log_q == 0.0) {
    return std::numeric_limits<std::uint64_t>::max() / 2;
  }
  if (std::isinf(log_q)) {
    return 0;
  }
  const double u = 1.0 - rng.uniform();  // (0, 1]
  const double k = std::floor(std::log(u) / log_q);
  return k >= 1e18 ? std::numeric_limits<std::uint64_t>::max() / 2 : static_cast<std::uint64_t>(k);
}

}  // namespace bqec::ft
