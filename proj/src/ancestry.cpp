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

#include "pfresample/ancestry.hpp"

#include <algorithm>
#include <atomic>
#include <numeric>
#include <stdexcept>
#include <string>

namespace pfresample {

void validate_ancestry(const ancestry_vector& ancestry) {
  const auto n = ancestry.size();
  const bool ok = std::all_of(ancestry.begin(), ancestry.end(), [n](std::size_t v) { return v < n; });
  if (!ok) {
    throw std::invalid_argument("ancestry vector: index out of range for N = " + std::to_string(n));
  }
}

void validate_cumulative_offspring(const cumulative_offspring& cumulative) {
  if (cumulative.empty()) {
    throw std::invalid_argument("cumulative offspring: empty vector");
  }
  if (!std::is_sorted(cumulative.begin(), cumulative.end())) {
    throw std::invalid_argument("cumulative offspring: not non-decreasing");
  }
  if (cumulative[cumulative.size() - 1] != cumulative.size()) {
    throw std::invalid_argument("cumulative offspring: last entry " +
                                std::to_string(cumulative[cumulative.size() - 1]) + " is not N = " +
                                std::to_string(cumulative.size()));
  }
}

ancestry_vector cumulative_offspring_to_ancestors(const cumulative_offspring& cumulative) {
  validate_cumulative_offspring(cumulative);
  const auto n = cumulative.size();
  ancestry_vector out(n);
  const auto ni = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t ii = 0; ii < ni; ++ii) {
    const auto i = static_cast<std::size_t>(ii);
    const std::size_t start = i == 0 ? 0 : cumulative[i - 1];
    for (std::size_t j = start; j < cumulative[i]; ++j) {
      out[j] = i;
    }
  }
  return out;
}

offspring_vector ancestors_to_offspring(const ancestry_vector& ancestry) {
  validate_ancestry(ancestry);
  const auto n = ancestry.size();
  offspring_vector out(n);
  const auto ni = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < ni; ++i) {
    std::atomic_ref<std::size_t>{out[ancestry[static_cast<std::size_t>(i)]]}.fetch_add(1, std::memory_order_relaxed);
  }
  return out;
}

cumulative_offspring offspring_to_cumulative(const offspring_vector& offspring) {
  if (offspring.empty()) {
    throw std::invalid_argument("offspring vector: empty vector");
  }
  cumulative_offspring out(offspring.size());
  std::inclusive_scan(offspring.begin(), offspring.end(), out.begin());
  if (out[out.size() - 1] != offspring.size()) {
    throw std::invalid_argument("offspring vector: counts sum to " + std::to_string(out[out.size() - 1]) +
                                ", not N = " + std::to_string(offspring.size()));
  }
  return out;
}

offspring_vector cumulative_to_offspring(const cumulative_offspring& cumulative) {
  validate_cumulative_offspring(cumulative);
  offspring_vector out(cumulative.size());
  std::adjacent_difference(cumulative.begin(), cumulative.end(), out.begin());
  return out;
}

ancestry_vector permute_serial(const ancestry_vector& ancestry) {
  validate_ancestry(ancestry);
  auto out = ancestry;
  const auto n = out.size();
  // Every swap makes one new fixed point, and fixed points are never moved
  // again, so there are at most N swaps.
  for (std::size_t i = 0; i < n;) {
    const auto v = out[i];
    if (v != i && out[v] != v) {
      std::swap(out[i], out[v]);
    } else {
      ++i;
    }
  }
  return out;
}

claim_vector prepermute(const ancestry_vector& ancestry) {
  validate_ancestry(ancestry);
  const auto n = ancestry.size();
  claim_vector claims(n, n);
  const auto ni = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t ii = 0; ii < ni; ++ii) {
    const auto i = static_cast<std::size_t>(ii);
    std::atomic_ref<std::size_t> slot{claims[ancestry[i]]};
    auto current = slot.load(std::memory_order_relaxed);
    while (i < current && !slot.compare_exchange_weak(current, i, std::memory_order_relaxed)) {
    }
  }
  return claims;
}

ancestry_vector permute_parallel(const ancestry_vector& ancestry, permute_stats* stats) {
  auto claims = prepermute(ancestry);
  const auto n = ancestry.size();
  const std::size_t sentinel = n;
  std::size_t max_steps = 0;
  std::size_t total_steps = 0;
  const auto ni = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(static) reduction(max : max_steps) reduction(+ : total_steps)
  for (std::ptrdiff_t ii = 0; ii < ni; ++ii) {
    const auto i = static_cast<std::size_t>(ii);
    // Slots won in prepermute() are never written again, so this read is stable.
    if (std::atomic_ref<std::size_t>{claims[ancestry[i]]}.load(std::memory_order_acquire) == i) {
      continue;
    }
    std::size_t x = i;
    std::size_t steps = 0;
    for (;;) {
      ++steps;
      std::atomic_ref<std::size_t> slot{claims[x]};
      auto next = slot.load(std::memory_order_acquire);
      if (next == sentinel) {
        if (slot.compare_exchange_strong(next, i, std::memory_order_acq_rel)) {
          break;
        }
      }
      x = next;
    }
    max_steps = std::max(max_steps, steps);
    total_steps += steps;
  }

  ancestry_vector out(n);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t ii = 0; ii < ni; ++ii) {
    const auto i = static_cast<std::size_t>(ii);
    out[i] = ancestry[claims[i]];
  }
  if (stats != nullptr) {
    stats->max_chain_steps = max_steps;
    stats->total_chain_steps = total_steps;
  }
  return out;
}

bool is_in_place_safe(const ancestry_vector& ancestry) {
  const auto offspring = ancestors_to_offspring(ancestry);
  for (std::size_t i = 0; i < ancestry.size(); ++i) {
    if (offspring[i] > 0 && ancestry[i] != i) {
      return false;
    }
  }
  return true;
}

}  // namespace pfresample
