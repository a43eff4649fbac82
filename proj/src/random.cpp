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

#include "pfresample/random.hpp"

#include <cmath>
#include <numbers>

namespace pfresample {

namespace {

constexpr std::uint32_t kPhiloxM0 = 0xD2511F53U;
constexpr std::uint32_t kPhiloxM1 = 0xCD9E8D57U;
constexpr std::uint32_t kPhiloxW0 = 0x9E3779B9U;
constexpr std::uint32_t kPhiloxW1 = 0xBB67AE85U;

std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30U)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27U)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31U);
}

}  // namespace

std::array<std::uint32_t, 4> philox4x32_10(std::array<std::uint32_t, 4> ctr,
                                           std::array<std::uint32_t, 2> key) noexcept {
  for (int round = 0; round < 10; ++round) {
    if (round > 0) {
      key[0] += kPhiloxW0;
      key[1] += kPhiloxW1;
    }
    const std::uint64_t p0 = static_cast<std::uint64_t>(kPhiloxM0) * ctr[0];
    const std::uint64_t p1 = static_cast<std::uint64_t>(kPhiloxM1) * ctr[2];
    const auto hi0 = static_cast<std::uint32_t>(p0 >> 32U);
    const auto lo0 = static_cast<std::uint32_t>(p0);
    const auto hi1 = static_cast<std::uint32_t>(p1 >> 32U);
    const auto lo1 = static_cast<std::uint32_t>(p1);
    ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
  }
  return ctr;
}

std::uint64_t mix_seed(std::uint64_t seed, std::initializer_list<std::uint64_t> coordinates) noexcept {
  std::uint64_t h = splitmix64(seed);
  for (const auto c : coordinates) {
    h = splitmix64(h ^ splitmix64(c + 0x632BE59BD9B4E019ULL));
  }
  return h;
}

counter_rng::counter_rng(std::uint64_t seed, std::uint64_t stream, std::uint32_t round) noexcept
    : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32U)},
      counter_{static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32U), round, 0U} {}

void counter_rng::refill() noexcept {
  block_ = philox4x32_10(counter_, key_);
  ++counter_[3];
  next_ = 0;
}

std::uint32_t counter_rng::next_u32() noexcept {
  if (next_ == 4) {
    refill();
  }
  return block_[next_++];
}

std::uint64_t counter_rng::next_u64() noexcept {
  const std::uint64_t hi = next_u32();
  return (hi << 32U) | next_u32();
}

__extension__ using uint128 = unsigned __int128;

std::size_t counter_rng::uniform_index(std::size_t n) noexcept {
  // Lemire's nearly-divisionless method, exact for any n < 2^64.
  auto x = next_u64();
  auto m = static_cast<uint128>(x) * n;
  auto low = static_cast<std::uint64_t>(m);
  if (low < n) {
    const std::uint64_t threshold = (0 - static_cast<std::uint64_t>(n)) % n;
    while (low < threshold) {
      x = next_u64();
      m = static_cast<uint128>(x) * n;
      low = static_cast<std::uint64_t>(m);
    }
  }
  return static_cast<std::size_t>(m >> 64U);
}

double counter_rng::normal() noexcept {
  const double u1 = uniform_positive<double>();
  const double u2 = uniform<double>();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace pfresample
