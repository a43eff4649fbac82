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

#ifndef PFRESAMPLE_RANDOM_HPP
#define PFRESAMPLE_RANDOM_HPP

#include <array>
#include <concepts>
#include <cstddef>
#include <cstdint>
#include <initializer_list>

/**
 * \file
 * \brief Counter-based random number streams.
 *
 * Every random draw made by the library is a pure function of a master seed,
 * a stream index (usually a particle index) and a round number. Parallel loops
 * therefore produce identical output for any number of workers and any
 * schedule.
 */

namespace pfresample {

/// The Philox4x32-10 block function of Salmon et al. (2011).
std::array<std::uint32_t, 4> philox4x32_10(std::array<std::uint32_t, 4> counter,
                                           std::array<std::uint32_t, 2> key) noexcept;

/// Mixes a seed with a list of coordinates into a new 64-bit seed (splitmix64 finaliser chain).
std::uint64_t mix_seed(std::uint64_t seed, std::initializer_list<std::uint64_t> coordinates) noexcept;

/// Sequential generator over one substream. Cheap to construct; copy to fork.
class counter_rng {
 public:
  counter_rng(std::uint64_t seed, std::uint64_t stream, std::uint32_t round) noexcept;

  std::uint32_t next_u32() noexcept;
  std::uint64_t next_u64() noexcept;

  /// Uniform on [0, 1).
  template <std::floating_point Real>
  Real uniform() noexcept {
    if constexpr (sizeof(Real) <= 4) {
      return static_cast<Real>(next_u32() >> 8) * Real{0x1.0p-24};
    } else {
      return static_cast<Real>(next_u64() >> 11) * Real{0x1.0p-53};
    }
  }

  /// Uniform on (0, 1].
  template <std::floating_point Real>
  Real uniform_positive() noexcept {
    if constexpr (sizeof(Real) <= 4) {
      return static_cast<Real>((next_u32() >> 8) + 1U) * Real{0x1.0p-24};
    } else {
      return static_cast<Real>((next_u64() >> 11) + 1U) * Real{0x1.0p-53};
    }
  }

  /// Uniform on {0, ..., n - 1}; n must be positive.
  std::size_t uniform_index(std::size_t n) noexcept;

  /// Standard normal variate (Box-Muller, one output per call).
  double normal() noexcept;

 private:
  void refill() noexcept;

  std::array<std::uint32_t, 2> key_;
  std::array<std::uint32_t, 4> counter_;
  std::array<std::uint32_t, 4> block_{};
  unsigned next_ = 4;
};

/// A family of substreams sharing a seed and a round.
struct rng_stream {
  std::uint64_t seed = 0;
  std::uint32_t round = 0;

  [[nodiscard]] counter_rng at(std::size_t index) const noexcept { return counter_rng{seed, index, round}; }
};

}  // namespace pfresample

#endif
