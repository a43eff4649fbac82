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
#include <limits>
#include <numbers>
#include <vector>

#include "pfresample/diagnostics.hpp"
#include "pfresample/random.hpp"
#include "test_support.hpp"

namespace {

using namespace pfresample;
using pfresample::testing::as_span;

// Moments of w(x) = N(x; y, 1) with x ~ N(0, 1), by trapezoidal quadrature.
double weight_moment(double y, int power) {
  const double inv = std::numbers::inv_sqrtpi / std::numbers::sqrt2;
  double total = 0.0;
  constexpr double kStep = 1e-3;
  for (double x = -20.0; x <= 20.0; x += kStep) {
    const double prior = inv * std::exp(-0.5 * x * x);
    const double w = inv * std::exp(-0.5 * (x - y) * (x - y));
    total += prior * std::pow(w, power) * kStep;
  }
  return total;
}

// Mean and relative variance of a weight set with batch-means standard errors.
struct moment_estimate {
  double mean;
  double mean_se;
  double relvar;
  double relvar_se;
};

moment_estimate estimate_moments(const std::vector<double>& w) {
  constexpr std::size_t kBatches = 100;
  const std::size_t size = w.size() / kBatches;
  std::vector<double> means;
  std::vector<double> relvars;
  for (std::size_t b = 0; b < kBatches; ++b) {
    double s = 0.0;
    double s2 = 0.0;
    for (std::size_t i = b * size; i < (b + 1) * size; ++i) {
      s += w[i];
      s2 += w[i] * w[i];
    }
    const double m = s / static_cast<double>(size);
    means.push_back(m);
    relvars.push_back((s2 / static_cast<double>(size) - m * m) / (m * m));
  }
  const auto summarise = [](const std::vector<double>& v) {
    double m = 0.0;
    for (const double x : v) {
      m += x;
    }
    m /= static_cast<double>(v.size());
    double var = 0.0;
    for (const double x : v) {
      var += (x - m) * (x - m);
    }
    var /= static_cast<double>(v.size() - 1);
    return std::pair{m, std::sqrt(var / static_cast<double>(v.size()))};
  };
  const auto [mean, mean_se] = summarise(means);
  const auto [relvar, relvar_se] = summarise(relvars);
  return {mean, mean_se, relvar, relvar_se};
}

TEST(Ess, Examples) {
  const std::vector<double> equal(8, 0.3);
  EXPECT_NEAR(ess(as_span(equal)), 8.0, 1e-12);
  EXPECT_EQ(ess(as_span(std::vector<double>{0, 0, 5, 0})), 1.0);
  EXPECT_DOUBLE_EQ(ess(as_span(std::vector<double>{1, 3})), 1.6);
  EXPECT_THROW(ess(as_span(std::vector<double>{0, 0})), std::invalid_argument);
}

TEST(Ess, BoundsAndScaleInvariance) {
  const auto w = simulate_weight_set<float>({1000, 2.0, 3});
  const float value = ess(as_span(w));
  EXPECT_GE(value, 1.0F);
  EXPECT_LE(value, 1000.0F);
  std::vector<float> scaled(w);
  for (auto& v : scaled) {
    v *= 0.125F;
  }
  EXPECT_EQ(ess(as_span(scaled)), value);
}

TEST(ResamplingMse, Examples) {
  const std::vector<double> uniform(5, 2.0);
  EXPECT_EQ(resampling_mse(offspring_vector{1, 1, 1, 1, 1}, as_span(uniform)), 0.0);
  EXPECT_DOUBLE_EQ(resampling_mse(offspring_vector{2, 0}, as_span(std::vector<double>{1, 1})), 0.25);
  EXPECT_THROW(resampling_mse(offspring_vector{2, 0}, as_span(uniform)), std::invalid_argument);
}

TEST(ResamplingMse, ZeroExactlyWhenProportional) {
  const std::vector<double> w{2, 0, 1, 1};
  EXPECT_EQ(resampling_mse(offspring_vector{2, 0, 1, 1}, as_span(w)), 0.0);
  EXPECT_GT(resampling_mse(offspring_vector{1, 1, 1, 1}, as_span(w)), 0.0);
  const std::vector<double> fractional{2.0, 0.0, 1.0, 1.0};
  EXPECT_EQ(resampling_mse(as_span(fractional), as_span(w)), 0.0);
}

TEST(SimulateWeights, InjectedStates) {
  const std::vector<double> at_y{1.5};
  EXPECT_DOUBLE_EQ(gaussian_weights<double>(as_span(at_y), 1.5)[0], 0.3989422804014327);
  const std::vector<double> far{7.5};
  const double tail = gaussian_weights<double>(as_span(far), 1.5)[0];
  EXPECT_GT(tail, 0.0);
  EXPECT_DOUBLE_EQ(tail, sup_weight() * std::exp(-18.0));
}

TEST(SimulateWeights, ReproducibleAndBounded) {
  const weight_set_spec spec{5000, 1.5, 77};
  const auto a = simulate_weight_set<float>(spec);
  EXPECT_EQ(a, simulate_weight_set<float>(spec));
  EXPECT_NE(a, simulate_weight_set<float>({5000, 1.5, 78}));
  for (const float w : a) {
    ASSERT_GT(w, 0.0F);
    ASSERT_LE(w, sup_weight<float>());
  }
}

TEST(SupWeight, Value) {
  EXPECT_NEAR(sup_weight(), 0.3989422804014327, 1e-15);
  EXPECT_EQ(sup_weight<float>(), static_cast<float>(0.3989422804014327));
}

TEST(ExpectedWeight, ClosedFormAgreesWithQuadrature) {
  EXPECT_NEAR(expected_weight(0.0), 0.28209479177387814, 1e-15);
  for (const double y : {0.0, 0.5, 1.0, 2.0, 3.5}) {
    EXPECT_NEAR(expected_weight(y), weight_moment(y, 1), 1e-9) << "y=" << y;
  }
  EXPECT_GT(expected_weight(1.0), expected_weight(2.0));
  EXPECT_LT(expected_weight(40.0), 1e-150);
}

TEST(RelativeWeightVariance, ClosedFormAgreesWithQuadrature) {
  EXPECT_NEAR(relative_weight_variance(0.0), 2.0 / std::sqrt(3.0) - 1.0, 1e-15);
  EXPECT_NEAR(relative_weight_variance(0.0), 0.1547, 1e-4);
  for (const double y : {0.0, 1.0, 2.0, 3.0}) {
    const double mean = weight_moment(y, 1);
    const double variance = weight_moment(y, 2) - mean * mean;
    EXPECT_NEAR(relative_weight_variance(y), variance / (mean * mean), 1e-7) << "y=" << y;
  }
  EXPECT_LT(relative_weight_variance(0.0), relative_weight_variance(1.0));
  EXPECT_LT(relative_weight_variance(1.0), relative_weight_variance(3.0));
}

TEST(SimulateWeights, MonteCarloMean) {
  const auto w = simulate_weight_set<double>({100000, 1.0, 5});
  const auto est = estimate_moments(w);
  EXPECT_NEAR(est.mean, expected_weight(1.0), 5.0 * est.mean_se);
}

TEST(SimulateWeights, MonteCarloRelativeVariance) {
  const auto w = simulate_weight_set<double>({1000000, 2.0, 6});
  const auto est = estimate_moments(w);
  EXPECT_NEAR(est.relvar, relative_weight_variance(2.0), 5.0 * est.relvar_se);
}

TEST(MaxNormalisedWeight, Examples) {
  EXPECT_NEAR(max_normalised_weight(0.0, 2), 1.0 / std::sqrt(2.0), 1e-15);
  EXPECT_EQ(max_normalised_weight(0.0, 1), 1.0);
  EXPECT_EQ(max_normalised_weight(10.0, 4), 1.0);
  EXPECT_LT(max_normalised_weight(2.0, 1U << 20), 1e-4);
}

TEST(LogWeights, Examples) {
  EXPECT_EQ(logweights_to_weights(as_span(std::vector<double>{0, 0, 0})), (std::vector<double>{1, 1, 1}));
  const auto w = logweights_to_weights(as_span(std::vector<double>{-1000, -1001}));
  EXPECT_EQ(w[0], 1.0);
  EXPECT_DOUBLE_EQ(w[1], std::exp(-1.0));
  const double ninf = -std::numeric_limits<double>::infinity();
  EXPECT_EQ(logweights_to_weights(as_span(std::vector<double>{ninf, 2.0})), (std::vector<double>{0, 1}));
}

TEST(LogWeights, Errors) {
  const double ninf = -std::numeric_limits<double>::infinity();
  EXPECT_THROW(logweights_to_weights(as_span(std::vector<double>{})), std::invalid_argument);
  EXPECT_THROW(logweights_to_weights(as_span(std::vector<double>{ninf, ninf})), std::invalid_argument);
  EXPECT_THROW(logweights_to_weights(as_span(std::vector<double>{0, std::nan("")})), std::invalid_argument);
  EXPECT_THROW(logweights_to_weights(as_span(std::vector<double>{0, -ninf})), std::invalid_argument);
}

TEST(LogWeights, RatiosPreserved) {
  counter_rng rng{9, 0, 0};
  std::vector<double> lw(1024);
  for (auto& v : lw) {
    v = -500.0 + 20.0 * rng.normal();
  }
  const auto w = logweights_to_weights(as_span(lw));
  EXPECT_EQ(*std::max_element(w.begin(), w.end()), 1.0);
  for (std::size_t i = 0; i < lw.size(); i += 7) {
    for (std::size_t j = 0; j < lw.size(); j += 13) {
      if (w[i] < 1e-280 || w[j] < 1e-280) {
        continue;
      }
      const double expected = std::exp(lw[i] - lw[j]);
      const double ratio = w[i] / w[j];
      const double ulp = std::nextafter(expected, 1e308) - expected;
      EXPECT_LE(std::abs(ratio - expected), 4.0 * ulp) << i << "," << j;
    }
  }
}

TEST(SortWeights, Ascending) {
  const auto w = simulate_weight_set<float>({100, 1.0, 2});
  const auto sorted = sort_weights(as_span(w));
  EXPECT_TRUE(std::is_sorted(sorted.begin(), sorted.end()));
  EXPECT_TRUE(std::is_permutation(sorted.begin(), sorted.end(), w.begin()));
}

}  // namespace
