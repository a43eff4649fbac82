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

#include "pfresample/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "pfresample/primitives.hpp"
#include "pfresample/random.hpp"
#include "pfresample/resamplers.hpp"

namespace pfresample {

template <std::floating_point Real>
Real ess(std::span<const Real> weights) {
  validate_weights(weights);
  Real total{0};
  Real squares{0};
  for (const Real w : weights) {
    total += w;
    squares += w * w;
  }
  return total * total / squares;
}

template <std::floating_point Real>
double resampling_mse(std::span<const double> offspring, std::span<const Real> weights) {
  if (offspring.size() != weights.size()) {
    throw std::invalid_argument("resampling_mse: offspring and weights differ in length");
  }
  validate_weights(weights);
  const auto n = static_cast<double>(weights.size());
  double total = 0.0;
  for (const Real w : weights) {
    total += static_cast<double>(w);
  }
  double acc = 0.0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    const double diff = offspring[i] / n - static_cast<double>(weights[i]) / total;
    acc += diff * diff;
  }
  return acc / n;
}

template <std::floating_point Real>
double resampling_mse(const offspring_vector& offspring, std::span<const Real> weights) {
  std::vector<double> counts(offspring.begin(), offspring.end());
  return resampling_mse(std::span<const double>{counts}, weights);
}

std::vector<double> simulate_states(const weight_set_spec& spec) {
  const rng_stream rng{spec.seed, 0};
  std::vector<double> states(spec.n);
  const auto n = static_cast<std::ptrdiff_t>(spec.n);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    states[static_cast<std::size_t>(i)] = rng.at(static_cast<std::size_t>(i)).normal();
  }
  return states;
}

template <std::floating_point Real>
std::vector<Real> gaussian_weights(std::span<const double> states, double y) {
  std::vector<Real> weights(states.size());
  std::transform(states.begin(), states.end(), weights.begin(), [y](double x) {
    const double d = x - y;
    return static_cast<Real>(sup_weight<double>() * std::exp(-0.5 * d * d));
  });
  return weights;
}

template <std::floating_point Real>
std::vector<Real> simulate_weight_set(const weight_set_spec& spec) {
  const auto states = simulate_states(spec);
  return gaussian_weights<Real>(states, spec.y);
}

double expected_weight(double y) noexcept { return 0.5 * std::numbers::inv_sqrtpi * std::exp(-0.25 * y * y); }

double relative_weight_variance(double y) noexcept {
  return 2.0 / std::numbers::sqrt3 * std::exp(y * y / 6.0) - 1.0;
}

double max_normalised_weight(double y, std::size_t n) noexcept {
  const double p = sup_weight<double>() / (static_cast<double>(n) * expected_weight(y));
  return std::min(1.0, p);
}

template <std::floating_point Real>
std::vector<Real> logweights_to_weights(std::span<const Real> log_weights) {
  if (log_weights.empty()) {
    throw std::invalid_argument("logweights_to_weights: empty input");
  }
  Real max = -std::numeric_limits<Real>::infinity();
  for (const Real lw : log_weights) {
    if (std::isnan(lw) || lw == std::numeric_limits<Real>::infinity()) {
      throw std::invalid_argument("logweights_to_weights: NaN or +infinity log-weight");
    }
    max = std::max(max, lw);
  }
  if (max == -std::numeric_limits<Real>::infinity()) {
    throw std::invalid_argument("logweights_to_weights: every weight is zero");
  }
  std::vector<Real> weights(log_weights.size());
  std::transform(log_weights.begin(), log_weights.end(), weights.begin(),
                 [max](Real lw) { return std::exp(lw - max); });
  return weights;
}

template <std::floating_point Real>
std::vector<Real> sort_weights(std::span<const Real> weights) {
  std::vector<Real> sorted(weights.begin(), weights.end());
  std::sort(sorted.begin(), sorted.end());
  return sorted;
}

#define PFRESAMPLE_INSTANTIATE(Real)                                                         \
  template Real ess(std::span<const Real>);                                                 \
  template double resampling_mse(const offspring_vector&, std::span<const Real>);           \
  template double resampling_mse(std::span<const double>, std::span<const Real>);           \
  template std::vector<Real> gaussian_weights(std::span<const double>, double);             \
  template std::vector<Real> simulate_weight_set(const weight_set_spec&);                   \
  template std::vector<Real> logweights_to_weights(std::span<const Real>);                  \
  template std::vector<Real> sort_weights(std::span<const Real>);

PFRESAMPLE_INSTANTIATE(float)
PFRESAMPLE_INSTANTIATE(double)

#undef PFRESAMPLE_INSTANTIATE

}  // namespace pfresample
