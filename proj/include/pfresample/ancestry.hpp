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

#ifndef PFRESAMPLE_ANCESTRY_HPP
#define PFRESAMPLE_ANCESTRY_HPP

#include <cstddef>

#include "pfresample/types.hpp"

/**
 * \file
 * \brief Conversions between ancestry, offspring and cumulative-offspring
 * vectors, and permutation of ancestry vectors for in-place propagation.
 *
 * An ancestry vector a is *in-place safe* when every particle that has at
 * least one child is its own parent: o[i] > 0 implies a[i] == i. Copying
 * x[i] <- x[a[i]] for all a[i] != i can then run concurrently without any
 * slot being both read and written.
 */

namespace pfresample {

struct claim_tag {};

/// Output of prepermute(): d[v] is the lowest i with a[i] == v, or the sentinel N if v has no child.
using claim_vector = index_vector<claim_tag>;

/// Each parent i writes its index into slots [O[i-1], O[i]). The result is sorted.
/// Throws std::invalid_argument if O is not non-decreasing with last entry N.
ancestry_vector cumulative_offspring_to_ancestors(const cumulative_offspring& cumulative);

/// Histogram of an ancestry vector, built with atomic increments.
/// Throws std::invalid_argument on an index out of range.
offspring_vector ancestors_to_offspring(const ancestry_vector& ancestry);

/// Inclusive prefix sum. Throws std::invalid_argument unless the counts sum to N.
cumulative_offspring offspring_to_cumulative(const offspring_vector& offspring);

/// Adjacent difference. Throws std::invalid_argument on an invalid cumulative vector.
offspring_vector cumulative_to_offspring(const cumulative_offspring& cumulative);

/// Serial single-pass permutation by pairwise swaps. O(N).
ancestry_vector permute_serial(const ancestry_vector& ancestry);

/// First phase of permute_parallel(): every i claims slot a[i] with an atomic min.
claim_vector prepermute(const ancestry_vector& ancestry);

struct permute_stats {
  /// Longest chain walk, counted in slots visited, over all unsuccessful claimants.
  std::size_t max_chain_steps = 0;
  /// Sum of chain-walk lengths.
  std::size_t total_chain_steps = 0;
};

/// Parallel permutation to an in-place safe ancestry vector.
/**
 * Claimants that lost in prepermute() follow the chain i, d[i], d[d[i]], ...
 * to an unclaimed slot and take it by compare-and-exchange; a lost race
 * resumes the walk from the winner's index. The walk never revisits a slot,
 * so it visits at most N slots. Output c[i] = a[d[i]].
 */
ancestry_vector permute_parallel(const ancestry_vector& ancestry, permute_stats* stats = nullptr);

/// True when o[i] > 0 implies a[i] == i for every i.
bool is_in_place_safe(const ancestry_vector& ancestry);

/// Throws std::invalid_argument unless every entry lies in [0, N).
void validate_ancestry(const ancestry_vector& ancestry);

/// Throws std::invalid_argument unless O is non-empty, non-decreasing and ends at N.
void validate_cumulative_offspring(const cumulative_offspring& cumulative);

}  // namespace pfresample

#endif
