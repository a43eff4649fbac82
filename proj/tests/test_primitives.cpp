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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "pfresample/primitives.hpp"
#include "pfresample/random.hpp"
#include "test_support.hpp"

namespace {

using namespace pfresample;
using pfresample::testing::as_span;

template <class Real>
std::vector<Real> random_vector(std::size_t n, std::uint64_t seed, double scale = 1.0) {
  std::vector<Real> out(n);
  counter_rng rng{seed, 0, 0};
  for (auto& v : out) {
    v = static_cast<Real>(scale * rng.uniform<double>());
  }
  return out;
}

template <class Real>
std::vector<Real> serial_fold(const std::vector<Real>& w) {
  std::vector<Real> out(w.size());
  Real acc{0};
  for (std::size_t i = 0; i < w.size(); ++i) {
    acc += w[i];
    out[i] = acc;
  }
  return out;
}

TEST(InclusivePrefixSum, SmallIntegers) {
  EXPECT_EQ(inclusive_prefix_sum(std::vector<double>{1, 2, 3}), (std::vector<double>{1, 3, 6}));
  EXPECT_EQ(inclusive_prefix_sum(std::vector<double>{5}), (std::vector<double>{5}));
}

TEST(InclusivePrefixSum, TenthsInSinglePrecision) {
  const std::vector<float> w(10, 0.1F);
  const auto scan = inclusive_prefix_sum(w);
  double oracle = 0.0;
  for (const float v : w) {
    oracle += static_cast<double>(v);
  }
  EXPECT_NEAR(scan.back(), 1.0, 1e-6);
  EXPECT_NEAR(scan.back(), oracle, 1e-6);
}

TEST(InclusivePrefixSum, MatchesSerialFoldWithinOneBlock) {
  const auto w = random_vector<float>(kScanBlockSize, 17);
  EXPECT_EQ(inclusive_prefix_sum(w), serial_fold(w));
}

TEST(InclusivePrefixSum, MonotoneAndAccurateAcrossBlocks) {
  const auto w = random_vector<float>(5 * kScanBlockSize + 123, 18);
  const auto scan = inclusive_prefix_sum(w);
  ASSERT_EQ(scan.size(), w.size());
  EXPECT_TRUE(std::is_sorted(scan.begin(), scan.end()));
  double oracle = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    oracle += w[i];
    ASSERT_NEAR(scan[i], oracle, 1e-5 * oracle + 1e-6) << "at " << i;
  }
}

TEST(ExclusivePrefixSum, SmallIntegers) {
  EXPECT_EQ(exclusive_prefix_sum(as_span(std::vector<double>{1, 2, 3})), (std::vector<double>{0, 1, 3}));
  EXPECT_EQ(exclusive_prefix_sum(as_span(std::vector<double>{7})), (std::vector<double>{0}));
}

TEST(ExclusivePrefixSum, IsInclusiveShiftedByOne) {
  for (const std::size_t n : {std::size_t{64}, 3 * kScanBlockSize + 5}) {
    const auto w = random_vector<double>(n, 19);
    const auto inclusive = inclusive_prefix_sum(w);
    const auto exclusive = exclusive_prefix_sum(as_span(w));
    ASSERT_EQ(exclusive.size(), n);
    EXPECT_EQ(exclusive[0], 0.0);
    for (std::size_t i = 1; i < n; ++i) {
      ASSERT_EQ(exclusive[i], inclusive[i - 1]) << "at " << i;
    }
  }
}

TEST(AdjacentDifference, Examples) {
  EXPECT_EQ(adjacent_difference(as_span(std::vector<double>{1, 3, 6})), (std::vector<double>{1, 2, 3}));
  EXPECT_EQ(adjacent_difference(as_span(std::vector<double>{4})), (std::vector<double>{4}));
}

TEST(AdjacentDifference, ExactRoundTripOnIntegers) {
  counter_rng rng{20, 0, 0};
  std::vector<float> o(256);
  for (auto& v : o) {
    v = static_cast<float>(rng.uniform_index(50));
  }
  const auto scan = inclusive_prefix_sum(o);
  EXPECT_EQ(adjacent_difference(as_span(scan)), o);
}

TEST(AdjacentDifference, RoundTripWithinFourUlp) {
  const auto w = random_vector<double>(4096, 21);
  const auto scan = inclusive_prefix_sum(w);
  const auto back = adjacent_difference(as_span(scan));
  for (std::size_t i = 0; i < w.size(); ++i) {
    const double ulp = std::nextafter(scan[i], 1e300) - scan[i];
    ASSERT_LE(std::abs(back[i] - w[i]), 4.0 * ulp) << "at " << i;
  }
}

TEST(Sum, Examples) {
  EXPECT_EQ(sum(std::vector<double>{1, 2, 3}), 6.0);
  EXPECT_EQ(sum(std::vector<double>{0, 0, 0}), 0.0);
}

TEST(Sum, BitIdenticalToLastScanElement) {
  for (const std::size_t n : {std::size_t{1}, std::size_t{1000}, kScanBlockSize + 1, 7 * kScanBlockSize + 99}) {
    const auto w = random_vector<float>(n, 22);
    EXPECT_EQ(sum(w), inclusive_prefix_sum(w).back()) << "n=" << n;
  }
}

TEST(StableSum, Examples) {
  EXPECT_EQ(stable_sum(std::vector<double>{1, 2, 3, 4}), 10.0);
  EXPECT_EQ(stable_sum(std::vector<double>{2.5}), 2.5);
  EXPECT_EQ(stable_sum(std::vector<double>{}), 0.0);
}

TEST(StableSum, MillionSinglePrecisionUniforms) {
  const auto w = random_vector<float>(1000000, 23);
  double oracle = 0.0;
  for (const float v : w) {
    oracle += v;
  }
  EXPECT_NEAR(stable_sum(w), oracle, 1e-4 * oracle);
}

TEST(StableSum, AdversarialLargeHead) {
  std::vector<float> w(4097, 1.0F);
  w[0] = 0x1.0p24F;
  const double oracle = 0x1.0p24 + 4096.0;
  float naive = 0.0F;
  for (const float v : w) {
    naive += v;
  }
  const float pairwise = stable_sum(w);
  EXPECT_EQ(naive, 0x1.0p24F);
  EXPECT_GE(pairwise, naive);
  EXPECT_LT(std::abs(pairwise - oracle), std::abs(naive - oracle));
}

TEST(StableSum, PermutationInvariantOnIntegers) {
  counter_rng rng{24, 0, 0};
  std::vector<double> w(1000);
  for (auto& v : w) {
    v = static_cast<double>(rng.uniform_index(1000));
  }
  const double reference = stable_sum(w);
  for (int trial = 0; trial < 20; ++trial) {
    for (std::size_t i = w.size() - 1; i > 0; --i) {
      std::swap(w[i], w[rng.uniform_index(i + 1)]);
    }
    ASSERT_EQ(stable_sum(w), reference);
  }
}

TEST(LowerBound, Examples) {
  const std::vector<double> cumulative{1, 3, 6, 10};
  EXPECT_EQ(lower_bound(as_span(cumulative), 0.5), 0U);
  EXPECT_EQ(lower_bound(as_span(cumulative), 3.0), 1U);
  EXPECT_EQ(lower_bound(as_span(cumulative), 9.99), 3U);
}

TEST(LowerBound, AgreesWithLinearScan) {
  counter_rng rng{25, 0, 0};
  for (std::size_t n = 1; n <= 64; ++n) {
    std::vector<double> w(n);
    for (auto& v : w) {
      v = rng.uniform<double>() < 0.3 ? 0.0 : static_cast<double>(1 + rng.uniform_index(4));
    }
    w.back() += 1.0;
    const auto cumulative = inclusive_prefix_sum(w);
    std::vector<double> probes(cumulative.begin(), cumulative.end());
    for (int k = 0; k < 200; ++k) {
      probes.push_back(cumulative.back() * rng.uniform_positive<double>());
    }
    for (const double u : probes) {
      std::size_t oracle = 0;
      while (cumulative[oracle] < u) {
        ++oracle;
      }
      ASSERT_EQ(lower_bound(as_span(cumulative), u), oracle) << "n=" << n << " u=" << u;
    }
  }
}

TEST(LowerBound, SkipsZeroWeightIntervals) {
  const std::vector<float> cumulative{0, 0, 2, 2, 5};
  EXPECT_EQ(lower_bound(as_span(cumulative), 0.0001F), 2U);
  EXPECT_EQ(lower_bound(as_span(cumulative), 2.0F), 2U);
  EXPECT_EQ(lower_bound(as_span(cumulative), 2.5F), 4U);
}

TEST(LowerBound, EmptyInputThrows) {
  const std::vector<double> empty;
  EXPECT_THROW(lower_bound(as_span(empty), 1.0), std::invalid_argument);
}

}  // namespace
