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

#include "pfresample/pf.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include "pfresample/diagnostics.hpp"
#include "pfresample/random.hpp"

namespace pfresample {

namespace {

double log_sum_exp(std::span<const double> values, double max) {
  double acc = 0.0;
  for (const double v : values) {
    acc += std::exp(v - max);
  }
  return max + std::log(acc);
}

std::size_t metropolis_steps_for(std::span<const double> weights) {
  // weights come from logweights_to_weights(), so the largest is exactly 1.
  double total = 0.0;
  for (const double w : weights) {
    total += w;
  }
  const double p_star = std::min(1.0, 1.0 / total);
  try {
    return metropolis_num_steps(p_star, weights.size());
  } catch (const std::domain_error&) {
    // Equal weights: the two-state chain mixes in a single step.
    return 1;
  }
}

}  // namespace

void linear_gaussian_model::validate() const {
  const auto positive = [](double s) { return std::isfinite(s) && s > 0.0; };
  if (!positive(transition_std) || !positive(observation_std) || !positive(initial_std)) {
    throw std::invalid_argument("linear_gaussian_model: standard deviations must be positive and finite");
  }
  if (!std::isfinite(coefficient) || !std::isfinite(initial_mean)) {
    throw std::invalid_argument("linear_gaussian_model: coefficient and initial mean must be finite");
  }
}

double linear_gaussian_model::log_observation_density(double y, double x) const noexcept {
  const double z = (y - x) / observation_std;
  return -0.5 * z * z + log_observation_density_sup();
}

double linear_gaussian_model::log_observation_density_sup() const noexcept {
  return -std::log(observation_std) - 0.5 * std::log(2.0 * std::numbers::pi);
}

pf_result pf_run(const linear_gaussian_model& model, std::span<const double> observations, const pf_options& options) {
  model.validate();
  const auto n = options.particles;
  if (n < 2) {
    throw std::invalid_argument("pf_run: at least two particles required");
  }
  if (observations.empty()) {
    throw std::invalid_argument("pf_run: no observations");
  }
  if (!(options.ess_threshold >= 0.0 && options.ess_threshold <= 1.0)) {
    throw std::invalid_argument("pf_run: ESS threshold must lie in [0, 1]");
  }
  const auto ni = static_cast<std::ptrdiff_t>(n);
  const double log_n = std::log(static_cast<double>(n));

  std::vector<double> particles(n);
  const rng_stream init_rng{mix_seed(options.seed, {0}), 0};
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t ii = 0; ii < ni; ++ii) {
    const auto i = static_cast<std::size_t>(ii);
    particles[i] = model.initial_mean + model.initial_std * init_rng.at(i).normal();
  }
  // Log-weights carry the total mass: initially 1/N each, summing to one.
  std::vector<double> log_weights(n, -log_n);
  // Upper bound on every entry of log_weights, known without a reduction.
  double log_bound = -log_n;

  pf_result result;
  result.steps.reserve(observations.size());
  for (std::size_t t = 0; t < observations.size(); ++t) {
    const double log_max = *std::max_element(log_weights.begin(), log_weights.end());
    const auto weights = logweights_to_weights(std::span<const double>{log_weights});
    const std::span<const double> w{weights};
    const double log_mass = log_sum_exp(log_weights, log_max);
    const double current_ess = ess(w);

    pf_step step;
    step.time = t + 1;
    step.ess = current_ess;
    step.resampled = options.ess_threshold >= 1.0 ||
                     current_ess < options.ess_threshold * static_cast<double>(n);
    if (step.resampled) {
      const rng_stream rng{mix_seed(options.seed, {2}), static_cast<std::uint32_t>(t)};
      // Bound on the scaled weights, whose maximum is exactly 1.
      const double sup = std::max(1.0, std::exp(log_bound - log_max));
      ancestry_vector ancestry;
      switch (options.resampler) {
        case resampler_kind::multinomial:
          ancestry = multinomial_ancestors(w, rng);
          break;
        case resampler_kind::multinomial_serial:
          ancestry = multinomial_ancestors_serial(w, rng);
          break;
        case resampler_kind::stratified:
          ancestry = cumulative_offspring_to_ancestors(stratified_cumulative_offspring(w, rng));
          break;
        case resampler_kind::systematic:
          ancestry = cumulative_offspring_to_ancestors(systematic_cumulative_offspring(w, rng));
          break;
        case resampler_kind::metropolis:
          ancestry = metropolis_ancestors(
              w, options.metropolis_steps > 0 ? options.metropolis_steps : metropolis_steps_for(w), rng);
          break;
        case resampler_kind::rejection:
          ancestry = rejection_ancestors(w, sup, rng);
          break;
        case resampler_kind::rejection_capped:
          break;
      }

      if (options.resampler == resampler_kind::rejection_capped) {
        const double cap = options.cap_fraction * sup;
        ancestry = permute_parallel(rejection_ancestors_capped(w, cap, rng).ancestry);
        // Offspring of capped parents keep the weight w / cap. Scaling by
        // Sum(v) / N makes the weighted system carry the previous mass in expectation.
        double capped_mass = 0.0;
        for (const double v : w) {
          capped_mass += std::min(v, cap);
        }
        const double log_scale = log_max + std::log(capped_mass) - log_n;
        for (std::size_t i = 0; i < n; ++i) {
          const double parent_weight = w[ancestry[i]];
          log_weights[i] = log_scale + std::log(parent_weight / std::min(parent_weight, cap));
        }
        log_bound = log_scale + std::log(sup / cap);
      } else {
        ancestry = permute_parallel(ancestry);
        std::fill(log_weights.begin(), log_weights.end(), log_mass - log_n);
        log_bound = log_mass - log_n;
      }
      pf_copy_step(std::span<double>{particles}, ancestry);
    }

    const double y = observations[t];
    const rng_stream move_rng{mix_seed(options.seed, {1}), static_cast<std::uint32_t>(t)};
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t ii = 0; ii < ni; ++ii) {
      const auto i = static_cast<std::size_t>(ii);
      particles[i] = model.coefficient * particles[i] + model.transition_std * move_rng.at(i).normal();
      log_weights[i] += model.log_observation_density(y, particles[i]);
    }
    log_bound += model.log_observation_density_sup();

    const double new_max = *std::max_element(log_weights.begin(), log_weights.end());
    if (!std::isfinite(new_max)) {
      throw std::runtime_error("pf_run: weights collapsed at time " + std::to_string(t + 1));
    }
    double mass = 0.0;
    double moment = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double v = std::exp(log_weights[i] - new_max);
      mass += v;
      moment += v * particles[i];
    }
    result.log_likelihood += new_max + std::log(mass) - log_mass;
    step.filtered_mean = moment / mass;
    result.steps.push_back(step);
  }
  return result;
}

gaussian_filter_result kalman_filter(const linear_gaussian_model& model, std::span<const double> observations) {
  model.validate();
  gaussian_filter_result out;
  double mean = model.initial_mean;
  double var = model.initial_std * model.initial_std;
  const double q2 = model.transition_std * model.transition_std;
  const double r2 = model.observation_std * model.observation_std;
  for (const double y : observations) {
    const double pred_mean = model.coefficient * mean;
    const double pred_var = model.coefficient * model.coefficient * var + q2;
    const double innovation_var = pred_var + r2;
    const double innovation = y - pred_mean;
    out.log_likelihood +=
        -0.5 * (std::log(2.0 * std::numbers::pi * innovation_var) + innovation * innovation / innovation_var);
    const double gain = pred_var / innovation_var;
    mean = pred_mean + gain * innovation;
    var = (1.0 - gain) * pred_var;
    out.means.push_back(mean);
    out.variances.push_back(var);
  }
  return out;
}

simulated_series simulate_series(const linear_gaussian_model& model, std::size_t steps, std::uint64_t seed) {
  model.validate();
  auto gen = rng_stream{mix_seed(seed, {3}), 0}.at(0);
  simulated_series out;
  double x = model.initial_mean + model.initial_std * gen.normal();
  for (std::size_t t = 0; t < steps; ++t) {
    x = model.coefficient * x + model.transition_std * gen.normal();
    out.states.push_back(x);
    out.observations.push_back(x + model.observation_std * gen.normal());
  }
  return out;
}

}  // namespace pfresample
