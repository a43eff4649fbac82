// Copyright 2026 The pfresample Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef PFRESAMPLE_DIAGNOSTICS_HPP
#define PFRESAMPLE_DIAGNOSTICS_HPP

#include <concepts>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <span>
#include <vector>

#include "pfresample/types.hpp"

/**
 * \file
 * \brief Effective sample size, resampling error, and the synthetic Gaussian
 * weight sets used by the benchmark harness.
 *
 * A weight set draws x[i] ~ N(0, 1) and weighs each by the N(y; x, 1)
 * likelihood, so w[i] = exp(-(x[i] - y)^2 / 2) / sqrt(2 pi). Larger |y|
 * means larger relative variance of the weights.
 */

namespace pfresample {

/// Effective sample size Sum(w)^2 / (w . w), in [1, N].
template <std::floating_point Real>
Real ess(std::span<const Real> weights);

/// (1/N) sum_i (o[i]/N - w[i]/Sum(w))^2. Throws std::invalid_argument on a length mismatch.
template <std::floating_point Real>
double resampling_mse(const offspring_vector& offspring, std::span<const Real> weights);

/// Same metric for a weighted outcome, where \p offspring holds possibly fractional counts summing to N.
template <std::floating_point Real>
double resampling_mse(std::span<const double> offspring, std::span<const Real> weights);

struct weight_set_spec {
  std::size_t n = 0;
  double y = 0.0;
  std::uint64_t seed = 0;
};

/// Standard normal states of a weight set; state i comes from substream i.
std::vector<double> simulate_states(const weight_set_spec& spec);

/// Gaussian likelihood weights of given states.
template <std::floating_point Real>
std::vector<Real> gaussian_weights(std::span<const double> states, double y);

/// gaussian_weights(simulate_states(spec), spec.y).
template <std::floating_point Real>
std::vector<Real> simulate_weight_set(const weight_set_spec& spec);

/// Upper bound 1/sqrt(2 pi) on any simulated weight.
template <std::floating_point Real = double>
constexpr Real sup_weight() noexcept {
  return static_cast<Real>(std::numbers::inv_sqrtpi / std::numbers::sqrt2);
}

/// Expected simulated weight, N(y; 0, 2) = exp(-y^2/4) / (2 sqrt(pi)).
double expected_weight(double y) noexcept;

/// Relative variance V(w / E(w)) = (2 / sqrt(3)) exp(y^2 / 6) - 1.
double relative_weight_variance(double y) noexcept;

/// Bound on the largest normalised weight, sup w / (N E(w)), clamped to (0, 1].
double max_normalised_weight(double y, std::size_t n) noexcept;

/// Exponentiates log-weights after subtracting their maximum, so the largest weight is exactly 1.
/**
 * Entries may be -infinity (zero weight). Throws std::invalid_argument on
 * NaN, +infinity, empty input, or when every entry is -infinity.
 */
template <std::floating_point Real>
std::vector<Real> logweights_to_weights(std::span<const Real> log_weights);

/// Ascending sort of a copy of the weights.
template <std::floating_point Real>
std::vector<Real> sort_weights(std::span<const Real> weights);

}  // namespace pfresample

#endif
