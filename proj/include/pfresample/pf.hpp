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

#ifndef PFRESAMPLE_PF_HPP
#define PFRESAMPLE_PF_HPP

#include <cassert>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "pfresample/ancestry.hpp"
#include "pfresample/resamplers.hpp"
#include "pfresample/types.hpp"

/**
 * \file
 * \brief Reference bootstrap particle filter on a scalar linear-Gaussian
 * model, and the exact Kalman filter it is checked against.
 *
 * The model is x_0 ~ N(m0, s0^2), x_t = phi x_{t-1} + N(0, q^2) and
 * y_t = x_t + N(0, r^2).
 */

namespace pfresample {

struct linear_gaussian_model {
  double coefficient = 0.0;
  double transition_std = 1.0;
  double observation_std = 1.0;
  double initial_mean = 0.0;
  double initial_std = 1.0;

  /// Throws std::invalid_argument unless all standard deviations are positive and finite.
  void validate() const;
  [[nodiscard]] double log_observation_density(double y, double x) const noexcept;
  /// log of the observation density at its mode, an upper bound on every log-weight increment.
  [[nodiscard]] double log_observation_density_sup() const noexcept;
};

struct pf_options {
  std::size_t particles = 1000;
  resampler_kind resampler = resampler_kind::systematic;
  /// Resample when ESS / N falls below this; 0 never resamples, 1 always does.
  double ess_threshold = 0.5;
  std::uint64_t seed = 1;
  /// Fixed Metropolis step count; 0 derives it each step from p* = max(w) / Sum(w).
  std::size_t metropolis_steps = 0;
  /// Cap for rejection-capped as a fraction of the current weight bound.
  double cap_fraction = 0.5;
};

struct pf_step {
  std::size_t time = 0;
  double filtered_mean = 0.0;
  /// ESS of the weights the resampling decision was made on.
  double ess = 0.0;
  bool resampled = false;
};

struct pf_result {
  std::vector<pf_step> steps;
  double log_likelihood = 0.0;
};

/// Runs the filter over \p observations (y_1, ..., y_T).
/**
 * Resampling always goes through permute_parallel() and an in-place copy
 * step. Weights are kept as log-weights carrying the total mass, so the
 * log-likelihood estimate stays unbiased on the natural scale also for
 * skipped resampling steps and for the weighted output of rejection-capped.
 * Throws std::runtime_error if every weight collapses to zero.
 */
pf_result pf_run(const linear_gaussian_model& model, std::span<const double> observations, const pf_options& options);

/// In-place gather particles[i] <- particles[a[i]] for every a[i] != i.
/**
 * Requires an in-place safe ancestry (checked by assertion in debug builds):
 * then no slot is both read and written, and the copies may run concurrently.
 */
template <class T>
void pf_copy_step(std::span<T> particles, const ancestry_vector& ancestry) {
  if (particles.size() != ancestry.size()) {
    throw std::invalid_argument("pf_copy_step: particles and ancestry differ in length");
  }
  assert(is_in_place_safe(ancestry));
  const auto n = static_cast<std::ptrdiff_t>(particles.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t ii = 0; ii < n; ++ii) {
    const auto i = static_cast<std::size_t>(ii);
    if (ancestry[i] != i) {
      particles[i] = particles[ancestry[i]];
    }
  }
}

struct gaussian_filter_result {
  std::vector<double> means;
  std::vector<double> variances;
  double log_likelihood = 0.0;
};

/// Exact filtering means, variances and log-likelihood by the Kalman recursion.
gaussian_filter_result kalman_filter(const linear_gaussian_model& model, std::span<const double> observations);

struct simulated_series {
  std::vector<double> states;        // x_1, ..., x_T
  std::vector<double> observations;  // y_1, ..., y_T
};

simulated_series simulate_series(const linear_gaussian_model& model, std::size_t steps, std::uint64_t seed);

}  // namespace pfresample

#endif
