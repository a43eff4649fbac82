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

#include "pfresample/resamplers.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <string>

#include "pfresample/primitives.hpp"

namespace pfresample {

namespace {

constexpr std::string_view kResamplerNames[] = {
    "multinomial", "multinomial-serial", "stratified", "systematic", "metropolis", "rejection", "rejection-capped",
};

template <class Real>
bool is_valid_weight(Real w) noexcept {
  return std::isfinite(w) && w >= Real{0};
}

template <class Real, class OffsetFn>
cumulative_offspring stratified_impl(std::span<const Real> weights, OffsetFn&& offset_of_stratum) {
  validate_weights(weights);
  const auto n = weights.size();
  const auto cumulative = inclusive_prefix_sum(weights);
  const Real total = cumulative.back();
  const auto scale = static_cast<Real>(n);
  cumulative_offspring out(n);
  const auto ni = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t ii = 0; ii < ni; ++ii) {
    const auto i = static_cast<std::size_t>(ii);
    // Dividing first keeps r exactly N at the last particle.
    const Real r = scale * (cumulative[i] / total);
    const auto k = std::min(n - 1, static_cast<std::size_t>(std::floor(r)));
    out[i] = stratum_offset_kernel(r, offset_of_stratum(k), n);
  }
  return out;
}

}  // namespace

std::string_view to_string(resampler_kind kind) noexcept { return kResamplerNames[static_cast<std::size_t>(kind)]; }

std::optional<resampler_kind> parse_resampler_kind(std::string_view name) noexcept {
  for (const auto kind : kAllResamplers) {
    if (to_string(kind) == name) {
      return kind;
    }
  }
  return std::nullopt;
}

template <std::floating_point Real>
void validate_weights(std::span<const Real> weights) {
  if (weights.empty()) {
    throw std::invalid_argument("weights: empty weight vector");
  }
  std::size_t invalid = 0;
  std::size_t positive = 0;
  const auto n = static_cast<std::ptrdiff_t>(weights.size());
#pragma omp parallel for schedule(static) reduction(+ : invalid, positive)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const Real w = weights[static_cast<std::size_t>(i)];
    invalid += is_valid_weight(w) ? 0U : 1U;
    positive += w > Real{0} ? 1U : 0U;
  }
  if (invalid != 0) {
    throw std::invalid_argument("weights: " + std::to_string(invalid) + " negative or non-finite weight(s)");
  }
  if (positive == 0) {
    throw std::invalid_argument("weights: all weights are zero");
  }
}

template <std::floating_point Real>
ancestry_vector multinomial_ancestors(std::span<const Real> weights, const rng_stream& rng) {
  validate_weights(weights);
  const auto n = weights.size();
  const auto cumulative = inclusive_prefix_sum(weights);
  const std::span<const Real> view{cumulative};
  const Real total = cumulative.back();
  ancestry_vector out(n);
  const auto ni = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t ii = 0; ii < ni; ++ii) {
    const auto i = static_cast<std::size_t>(ii);
    auto gen = rng.at(i);
    // u is drawn from (0, total].
    out[i] = lower_bound(view, gen.uniform_positive<Real>() * total);
  }
  return out;
}

template <std::floating_point Real>
ancestry_vector multinomial_ancestors(std::span<const Real> weights, std::span<const Real> scaled_draws) {
  validate_weights(weights);
  if (scaled_draws.size() != weights.size()) {
    throw std::invalid_argument("multinomial_ancestors: one draw per particle required");
  }
  const auto cumulative = inclusive_prefix_sum(weights);
  const std::span<const Real> view{cumulative};
  ancestry_vector out(weights.size());
  for (std::size_t i = 0; i < weights.size(); ++i) {
    out[i] = lower_bound(view, scaled_draws[i]);
  }
  return out;
}

template <std::floating_point Real>
ancestry_vector multinomial_ancestors_serial(std::span<const Real> weights, const rng_stream& rng) {
  validate_weights(weights);
  const auto n = weights.size();
  const auto cumulative = exclusive_prefix_sum(weights);
  const Real total = cumulative.back() + weights.back();
  auto gen = rng.at(0);
  ancestry_vector out(n);
  Real log_max{0};
  std::size_t j = n - 1;
  for (std::size_t i = n; i-- > 0;) {
    // The largest of i + 1 uniforms, scaled by the previous maximum.
    log_max += std::log(gen.uniform_positive<Real>()) / static_cast<Real>(i + 1);
    const Real u = total * std::exp(log_max);
    // Zero weights have empty intervals and are skipped.
    while (j > 0 && (u < cumulative[j] || weights[j] == Real{0})) {
      --j;
    }
    out[i] = j;
  }
  return out;
}

template <std::floating_point Real>
std::size_t stratum_offset_kernel(Real r, Real u, std::size_t n) noexcept {
  const Real sum = r + u;
  const auto rounded = static_cast<std::size_t>(std::floor(sum));
  return std::min(n, rounded);
}

template <std::floating_point Real>
cumulative_offspring stratified_cumulative_offspring(std::span<const Real> weights, const rng_stream& rng) {
  return stratified_impl(weights, [&rng](std::size_t k) { return rng.at(k).template uniform<Real>(); });
}

template <std::floating_point Real>
cumulative_offspring stratified_cumulative_offspring(std::span<const Real> weights,
                                                     std::span<const Real> offsets) {
  if (offsets.size() != weights.size()) {
    throw std::invalid_argument("stratified_cumulative_offspring: one offset per stratum required");
  }
  return stratified_impl(weights, [offsets](std::size_t k) { return offsets[k]; });
}

template <std::floating_point Real>
cumulative_offspring systematic_cumulative_offspring(std::span<const Real> weights, const rng_stream& rng) {
  return systematic_cumulative_offspring(weights, rng.at(0).template uniform<Real>());
}

template <std::floating_point Real>
cumulative_offspring systematic_cumulative_offspring(std::span<const Real> weights, Real offset) {
  return stratified_impl(weights, [offset](std::size_t) { return offset; });
}

std::size_t metropolis_num_steps(double p_star, double epsilon, std::size_t n) {
  if (!(p_star > 0.0 && p_star <= 1.0)) {
    throw std::invalid_argument("metropolis_num_steps: p* must lie in (0, 1]");
  }
  if (!(epsilon > 0.0 && epsilon < p_star)) {
    throw std::invalid_argument("metropolis_num_steps: epsilon must lie in (0, p*)");
  }
  if (n < 2) {
    throw std::invalid_argument("metropolis_num_steps: at least two particles required");
  }
  const double nn = static_cast<double>(n);
  const double alpha = (1.0 - p_star) / (nn * p_star);
  const double beta = 1.0 / nn;
  const double lambda = 1.0 - alpha - beta;
  if (!(lambda > 0.0)) {
    throw std::domain_error("metropolis_num_steps: p* = " + std::to_string(p_star) + " is too small for N = " +
                            std::to_string(n) + " (lambda = " + std::to_string(lambda) + ")");
  }
  const double target = epsilon * (alpha + beta) / std::max(alpha, beta);
  if (target >= 1.0) {
    return 1;
  }
  const double threshold = std::log(target) / std::log(lambda);
  return std::max<std::size_t>(1, static_cast<std::size_t>(std::floor(threshold)) + 1);
}

std::size_t metropolis_num_steps(double p_star, std::size_t n) {
  return metropolis_num_steps(p_star, p_star * 1e-2, n);
}

metropolis_config metropolis_config::from_bound(double p_star, std::size_t n, std::optional<double> epsilon) {
  const double eps = epsilon.value_or(p_star * 1e-2);
  return metropolis_config{p_star, eps, metropolis_num_steps(p_star, eps, n)};
}

template <std::floating_point Real>
ancestry_vector metropolis_ancestors(std::span<const Real> weights, std::size_t steps, const rng_stream& rng) {
  if (weights.empty()) {
    throw std::invalid_argument("metropolis_ancestors: empty weight vector");
  }
  const auto n = weights.size();
  ancestry_vector out(n);
  std::atomic<bool> invalid{false};
  const auto ni = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t ii = 0; ii < ni; ++ii) {
    const auto i = static_cast<std::size_t>(ii);
    auto gen = rng.at(i);
    std::size_t k = i;
    Real wk = weights[k];
    bool ok = is_valid_weight(wk);
    for (std::size_t step = 0; step < steps; ++step) {
      const Real u = gen.uniform_positive<Real>();
      const std::size_t j = gen.uniform_index(n);
      const Real wj = weights[j];
      ok = ok && is_valid_weight(wj);
      if (wk == Real{0} || u <= wj / wk) {
        k = j;
        wk = wj;
      }
    }
    out[i] = k;
    if (!ok) {
      invalid.store(true, std::memory_order_relaxed);
    }
  }
  if (invalid.load()) {
    throw std::invalid_argument("metropolis_ancestors: negative or non-finite weight encountered");
  }
  return out;
}

template <std::floating_point Real>
ancestry_vector rejection_ancestors(std::span<const Real> weights, Real sup_weight, const rng_stream& rng,
                                    rejection_stats* stats) {
  validate_weights(weights);
  if (!(sup_weight > Real{0}) || !std::isfinite(sup_weight)) {
    throw std::invalid_argument("rejection_ancestors: weight bound must be positive and finite");
  }
  const auto n = weights.size();
  ancestry_vector out(n);
  std::size_t proposals = 0;
  const auto ni = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(dynamic, 256) reduction(+ : proposals)
  for (std::ptrdiff_t ii = 0; ii < ni; ++ii) {
    const auto i = static_cast<std::size_t>(ii);
    auto gen = rng.at(i);
    std::size_t j = i;
    std::size_t trips = 1;
    Real beta = gen.uniform_positive<Real>();
    while (beta > weights[j] / sup_weight) {
      j = gen.uniform_index(n);
      beta = gen.uniform_positive<Real>();
      ++trips;
    }
    out[i] = j;
    proposals += trips;
  }
  if (stats != nullptr) {
    stats->proposals = proposals;
  }
  return out;
}

template <std::floating_point Real>
capped_rejection_result<Real> rejection_ancestors_capped(std::span<const Real> weights, Real sup_v,
                                                         const rng_stream& rng, rejection_stats* stats) {
  validate_weights(weights);
  if (!(sup_v > Real{0}) || !std::isfinite(sup_v)) {
    throw std::invalid_argument("rejection_ancestors_capped: cap must be positive and finite");
  }
  const auto n = weights.size();
  std::vector<Real> capped(n);
  std::transform(weights.begin(), weights.end(), capped.begin(), [sup_v](Real w) { return std::min(w, sup_v); });
  capped_rejection_result<Real> result{
      rejection_ancestors(std::span<const Real>{capped}, sup_v, rng, stats),
      std::vector<Real>(n),
  };
  for (std::size_t i = 0; i < n; ++i) {
    const auto parent = result.ancestry[i];
    result.weights[i] = weights[parent] / capped[parent];
  }
  return result;
}

#define PFRESAMPLE_INSTANTIATE(Real)                                                                          \
  template void validate_weights(std::span<const Real>);                                                     \
  template ancestry_vector multinomial_ancestors(std::span<const Real>, const rng_stream&);                  \
  template ancestry_vector multinomial_ancestors(std::span<const Real>, std::span<const Real>);              \
  template ancestry_vector multinomial_ancestors_serial(std::span<const Real>, const rng_stream&);           \
  template std::size_t stratum_offset_kernel(Real, Real, std::size_t) noexcept;                              \
  template cumulative_offspring stratified_cumulative_offspring(std::span<const Real>, const rng_stream&);    \
  template cumulative_offspring stratified_cumulative_offspring(std::span<const Real>, std::span<const Real>); \
  template cumulative_offspring systematic_cumulative_offspring(std::span<const Real>, const rng_stream&);    \
  template cumulative_offspring systematic_cumulative_offspring(std::span<const Real>, Real);                 \
  template ancestry_vector metropolis_ancestors(std::span<const Real>, std::size_t, const rng_stream&);      \
  template ancestry_vector rejection_ancestors(std::span<const Real>, Real, const rng_stream&,               \
                                               rejection_stats*);                                            \
  template capped_rejection_result<Real> rejection_ancestors_capped(std::span<const Real>, Real,             \
                                                                    const rng_stream&, rejection_stats*);

PFRESAMPLE_INSTANTIATE(float)
PFRESAMPLE_INSTANTIATE(double)

#undef PFRESAMPLE_INSTANTIATE

}  // namespace pfresample
