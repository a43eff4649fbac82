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

#ifndef PFRESAMPLE_RESAMPLERS_HPP
#define PFRESAMPLE_RESAMPLERS_HPP

#include <concepts>
#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "pfresample/random.hpp"
#include "pfresample/types.hpp"

/**
 * \file
 * \brief Multinomial, stratified, systematic, Metropolis and rejection resamplers.
 *
 * Weights are linear-scale, non-negative and finite, with at least one strictly
 * positive entry; they need not be normalised. Every per-particle loop draws
 * from its own substream of the supplied rng_stream (substream i for particle
 * i), so results do not depend on the number of workers.
 */

namespace pfresample {

enum class resampler_kind {
  multinomial,
  multinomial_serial,
  stratified,
  systematic,
  metropolis,
  rejection,
  rejection_capped,
};

inline constexpr resampler_kind kAllResamplers[] = {
    resampler_kind::multinomial, resampler_kind::multinomial_serial, resampler_kind::stratified,
    resampler_kind::systematic,  resampler_kind::metropolis,         resampler_kind::rejection,
    resampler_kind::rejection_capped,
};

/// Hyphenated command-line name, e.g. "multinomial-serial".
std::string_view to_string(resampler_kind kind) noexcept;
std::optional<resampler_kind> parse_resampler_kind(std::string_view name) noexcept;

/// True for the resamplers that deliver a cumulative offspring vector rather than ancestors.
constexpr bool delivers_cumulative_offspring(resampler_kind kind) noexcept {
  return kind == resampler_kind::stratified || kind == resampler_kind::systematic;
}

/// Throws std::invalid_argument unless every weight is finite and non-negative and one is positive.
template <std::floating_point Real>
void validate_weights(std::span<const Real> weights);

/// Multinomial resampling by inclusive scan and one binary search per particle.
template <std::floating_point Real>
ancestry_vector multinomial_ancestors(std::span<const Real> weights, const rng_stream& rng);

/// Same, with caller-supplied draws already scaled to (0, total weight].
template <std::floating_point Real>
ancestry_vector multinomial_ancestors(std::span<const Real> weights, std::span<const Real> scaled_draws);

/// Single-pass O(N) multinomial resampling from sorted uniforms generated in
/// descending order; the returned ancestry is sorted. Uses substream 0 only.
template <std::floating_point Real>
ancestry_vector multinomial_ancestors_serial(std::span<const Real> weights, const rng_stream& rng);

/// min(N, floor(r + u)) evaluated in precision Real.
/**
 * In single precision u vanishes against large r, and the rounded sum can
 * exceed N before the clamp.
 */
template <std::floating_point Real>
std::size_t stratum_offset_kernel(Real r, Real u, std::size_t n) noexcept;

/// Stratified resampling; offset k comes from substream k.
template <std::floating_point Real>
cumulative_offspring stratified_cumulative_offspring(std::span<const Real> weights, const rng_stream& rng);

/// Stratified resampling with caller-supplied per-stratum offsets in [0, 1).
template <std::floating_point Real>
cumulative_offspring stratified_cumulative_offspring(std::span<const Real> weights, std::span<const Real> offsets);

/// Systematic resampling; the shared offset comes from substream 0.
template <std::floating_point Real>
cumulative_offspring systematic_cumulative_offspring(std::span<const Real> weights, const rng_stream& rng);

/// Systematic resampling with a caller-supplied offset in [0, 1).
template <std::floating_point Real>
cumulative_offspring systematic_cumulative_offspring(std::span<const Real> weights, Real offset);

/// Smallest number of Metropolis steps B bounding the selection bias for a
/// particle of maximum normalised weight \p p_star by \p epsilon.
/**
 * Reduces the chain to a two-state process (at a maximum-weight particle or
 * not) with transition probabilities alpha = (1 - p*) / (N p*) and beta = 1/N,
 * and returns the least B with B > log_lambda(epsilon (alpha + beta) / max(alpha, beta)),
 * lambda = 1 - alpha - beta. Always at least 1.
 *
 * Throws std::invalid_argument unless 0 < epsilon < p_star <= 1 and N >= 2,
 * and std::domain_error when lambda <= 0 (p* too small for N).
 */
std::size_t metropolis_num_steps(double p_star, double epsilon, std::size_t n);

/// As above with epsilon = p* / 100.
std::size_t metropolis_num_steps(double p_star, std::size_t n);

struct metropolis_config {
  double p_star = 1.0;
  double epsilon = 1e-2;
  std::size_t steps = 1;

  /// Derives steps from the bias bound; epsilon defaults to p* / 100 when not given.
  static metropolis_config from_bound(double p_star, std::size_t n, std::optional<double> epsilon = std::nullopt);
};

/// N independent Metropolis chains of \p steps steps each, chain i starting at i.
/**
 * Each step proposes j uniformly and moves there when u <= w[j] / w[k]. A
 * chain sitting at a zero weight always moves. No collective operation over
 * the weights is performed, and weights are not validated as a whole; a
 * non-finite or negative weight met by a chain raises std::invalid_argument.
 */
template <std::floating_point Real>
ancestry_vector metropolis_ancestors(std::span<const Real> weights, std::size_t steps, const rng_stream& rng);

struct rejection_stats {
  /// Total proposals evaluated over all particles, including the first deterministic one.
  std::size_t proposals = 0;
};

/// Rejection resampling against the bound \p sup_weight, with first proposal j = i.
/**
 * The output is unweighted: all weights become 1. A bound below the largest
 * weight is tolerated (acceptance ratios above 1 are simply accepted) but
 * biases the result. Throws std::invalid_argument when \p sup_weight is not
 * positive and finite or the weights are invalid.
 */
template <std::floating_point Real>
ancestry_vector rejection_ancestors(std::span<const Real> weights, Real sup_weight, const rng_stream& rng,
                                    rejection_stats* stats = nullptr);

template <std::floating_point Real>
struct capped_rejection_result {
  ancestry_vector ancestry;
  /// Importance weight w[a[i]] / min(w[a[i]], sup_v) of each offspring; 1 unless the parent was capped.
  std::vector<Real> weights;
};

/// Rejection resampling from the capped proposal v[i] = min(w[i], sup_v), returning importance weights.
template <std::floating_point Real>
capped_rejection_result<Real> rejection_ancestors_capped(std::span<const Real> weights, Real sup_v,
                                                         const rng_stream& rng, rejection_stats* stats = nullptr);

}  // namespace pfresample

#endif
