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

#ifndef PFRESAMPLE_PRIMITIVES_HPP
#define PFRESAMPLE_PRIMITIVES_HPP

#include <concepts>
#include <cstddef>
#include <span>
#include <vector>

/**
 * \file
 * \brief Collective building blocks: scans, differences, reductions and search.
 *
 * The scans and sums partition the input into fixed-size blocks. Each block
 * is scanned locally from zero, block totals are folded left to right, and
 * each block's offset is then added to its local scan. Results depend only on
 * the input, never on the number of workers. For inputs no longer than one
 * block this is exactly the serial left fold.
 */

namespace pfresample {

/// Number of elements per block in the blocked scans and sums.
inline constexpr std::size_t kScanBlockSize = std::size_t{1} << 14U;

/// result[i] = w[0] + ... + w[i].
template <std::floating_point Real>
std::vector<Real> inclusive_prefix_sum(std::span<const Real> w);

/// result[0] = 0, result[i] = w[0] + ... + w[i - 1]. Exactly the inclusive scan shifted by one.
template <std::floating_point Real>
std::vector<Real> exclusive_prefix_sum(std::span<const Real> w);

/// result[0] = W[0], result[i] = W[i] - W[i - 1].
template <std::floating_point Real>
std::vector<Real> adjacent_difference(std::span<const Real> cumulative);

/// Sum of all elements, bit-identical to the last element of inclusive_prefix_sum().
template <std::floating_point Real>
Real sum(std::span<const Real> w);

/// Balanced binary-tree (pairwise) summation.
/**
 * The rounding error grows with log2(N) rather than N, at the cost of
 * reassociating the additions. Zero for empty input.
 */
template <std::floating_point Real>
Real stable_sum(std::span<const Real> w);

/// Smallest index j with cumulative[j] >= u, by binary search.
/**
 * \p cumulative must be sorted ascending and non-empty. Callers draw u from
 * (0, cumulative.back()]; a value beyond the last element is clamped to the
 * last index.
 */
template <std::floating_point Real>
std::size_t lower_bound(std::span<const Real> cumulative, Real u);

/// Overloads taking std::vector.
template <std::floating_point Real>
std::vector<Real> inclusive_prefix_sum(const std::vector<Real>& w) {
  return inclusive_prefix_sum(std::span<const Real>{w});
}

template <std::floating_point Real>
Real sum(const std::vector<Real>& w) {
  return sum(std::span<const Real>{w});
}

template <std::floating_point Real>
Real stable_sum(const std::vector<Real>& w) {
  return stable_sum(std::span<const Real>{w});
}

}  // namespace pfresample

#endif
