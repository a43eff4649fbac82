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

#include "pfresample/primitives.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

namespace pfresample {

namespace {

std::size_t block_count(std::size_t n) noexcept { return (n + kScanBlockSize - 1) / kScanBlockSize; }

/// Left fold of each block, computed concurrently.
template <class Real>
std::vector<Real> block_totals(std::span<const Real> w, std::size_t blocks) {
  std::vector<Real> totals(blocks);
  const auto n = w.size();
  const auto nb = static_cast<std::ptrdiff_t>(blocks);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t b = 0; b < nb; ++b) {
    const auto first = static_cast<std::size_t>(b) * kScanBlockSize;
    const auto last = std::min(n, first + kScanBlockSize);
    Real acc{0};
    for (std::size_t j = first; j < last; ++j) {
      acc += w[j];
    }
    totals[static_cast<std::size_t>(b)] = acc;
  }
  return totals;
}

/// offsets[b] = totals[0] + ... + totals[b - 1], folded left to right.
template <class Real>
std::vector<Real> exclusive_offsets(const std::vector<Real>& totals) {
  std::vector<Real> offsets(totals.size(), Real{0});
  for (std::size_t b = 1; b < totals.size(); ++b) {
    offsets[b] = offsets[b - 1] + totals[b - 1];
  }
  return offsets;
}

template <class Real>
Real pairwise_sum(const Real* first, std::size_t n) noexcept {
  if (n == 1) {
    return first[0];
  }
  if (n == 2) {
    return first[0] + first[1];
  }
  const auto half = n / 2;
  return pairwise_sum(first, half) + pairwise_sum(first + half, n - half);
}

}  // namespace

template <std::floating_point Real>
std::vector<Real> inclusive_prefix_sum(std::span<const Real> w) {
  // Each block is scanned from zero and then shifted by its offset, so the
  // last element of block b equals the offset of block b + 1 exactly and the
  // output stays non-decreasing for non-negative input.
  const auto n = w.size();
  std::vector<Real> out(n);
  const auto blocks = block_count(n);
  const auto nb = static_cast<std::ptrdiff_t>(blocks);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t b = 0; b < nb; ++b) {
    const auto first = static_cast<std::size_t>(b) * kScanBlockSize;
    const auto last = std::min(n, first + kScanBlockSize);
    Real acc{0};
    for (std::size_t j = first; j < last; ++j) {
      acc += w[j];
      out[j] = acc;
    }
  }
  if (blocks > 1) {
    std::vector<Real> totals(blocks);
    for (std::size_t b = 0; b < blocks; ++b) {
      totals[b] = out[std::min(n, (b + 1) * kScanBlockSize) - 1];
    }
    const auto offsets = exclusive_offsets(totals);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t b = 1; b < nb; ++b) {
      const auto first = static_cast<std::size_t>(b) * kScanBlockSize;
      const auto last = std::min(n, first + kScanBlockSize);
      const Real offset = offsets[static_cast<std::size_t>(b)];
      for (std::size_t j = first; j < last; ++j) {
        out[j] = offset + out[j];
      }
    }
  }
  return out;
}

template <std::floating_point Real>
std::vector<Real> exclusive_prefix_sum(std::span<const Real> w) {
  auto out = inclusive_prefix_sum(w);
  if (!out.empty()) {
    std::shift_right(out.begin(), out.end(), 1);
    out.front() = Real{0};
  }
  return out;
}

template <std::floating_point Real>
std::vector<Real> adjacent_difference(std::span<const Real> cumulative) {
  const auto n = cumulative.size();
  std::vector<Real> out(n);
  if (n == 0) {
    return out;
  }
  out[0] = cumulative[0];
  const auto ni = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 1; i < ni; ++i) {
    const auto k = static_cast<std::size_t>(i);
    out[k] = cumulative[k] - cumulative[k - 1];
  }
  return out;
}

template <std::floating_point Real>
Real sum(std::span<const Real> w) {
  if (w.empty()) {
    return Real{0};
  }
  const auto totals = block_totals(w, block_count(w.size()));
  const auto offsets = exclusive_offsets(totals);
  return offsets.back() + totals.back();
}

template <std::floating_point Real>
Real stable_sum(std::span<const Real> w) {
  if (w.empty()) {
    return Real{0};
  }
  return pairwise_sum(w.data(), w.size());
}

template <std::floating_point Real>
std::size_t lower_bound(std::span<const Real> cumulative, Real u) {
  if (cumulative.empty()) {
    throw std::invalid_argument("lower_bound: empty cumulative vector");
  }
  assert(!(u > cumulative.back()) && "lower_bound: draw beyond the total");
  const auto it = std::lower_bound(cumulative.begin(), cumulative.end(), u);
  const auto j = static_cast<std::size_t>(it - cumulative.begin());
  return std::min(j, cumulative.size() - 1);
}

#define PFRESAMPLE_INSTANTIATE(Real)                                           \
  template std::vector<Real> inclusive_prefix_sum(std::span<const Real>);     \
  template std::vector<Real> exclusive_prefix_sum(std::span<const Real>);     \
  template std::vector<Real> adjacent_difference(std::span<const Real>);      \
  template Real sum(std::span<const Real>);                                   \
  template Real stable_sum(std::span<const Real>);                            \
  template std::size_t lower_bound(std::span<const Real>, Real);

PFRESAMPLE_INSTANTIATE(float)
PFRESAMPLE_INSTANTIATE(double)

#undef PFRESAMPLE_INSTANTIATE

}  // namespace pfresample
