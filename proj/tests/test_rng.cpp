// Copyright 2026 The qcoin Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qcoin/rng.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <set>

namespace qcoin {
namespace {

TEST(Rng, SameSeedSameSequence) {
  Rng a(42), b(42);
  for (int i = 0; i < 1000; ++i) EXPECT_EQ(a.uniform(), b.uniform());
}

TEST(Rng, DerivedSeedsAreDistinct) {
  std::set<std::uint64_t> seen;
  for (std::uint64_t s = 0; s < 50; ++s) {
    for (std::uint64_t stream = 0; stream < 50; ++stream) seen.insert(derive_seed(s, stream));
  }
  EXPECT_EQ(seen.size(), 2500u);
}

TEST(Rng, UniformInHalfOpenUnitInterval) {
  Rng rng(7);
  double sum = 0.0;
  for (int i = 0; i < 100000; ++i) {
    const double u = rng.uniform();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    sum += u;
  }
  EXPECT_NEAR(sum / 100000, 0.5, 4.0 * std::sqrt(1.0 / 12.0 / 100000));
}

TEST(Rng, BernoulliEdges) {
  Rng rng(1);
  for (int i = 0; i < 1000; ++i) {
    EXPECT_TRUE(rng.bernoulli(1.0));
    EXPECT_FALSE(rng.bernoulli(0.0));
  }
}

TEST(Rng, GeometricMomentsWithinThreeStandardErrors) {
  for (double p : {0.1, 0.5, 0.9}) {
    Rng rng(derive_seed(11, static_cast<std::uint64_t>(p * 10)));
    const int n = 100000;
    double sum = 0.0, sum2 = 0.0;
    for (int i = 0; i < n; ++i) {
      const double r = static_cast<double>(rng.geometric(p));
      ASSERT_GE(r, 1.0);
      sum += r;
      sum2 += r * r;
    }
    const double mean = sum / n;
    const double var = sum2 / n - mean * mean;
    const double true_mean = 1.0 / p;
    const double true_var = (1.0 - p) / (p * p);
    EXPECT_NEAR(mean, true_mean, 3.0 * std::sqrt(true_var / n)) << "p=" << p;
    // Var of the sample variance ~ (mu4 - sigma^4)/n; mu4 of the geometric distribution.
    const double mu4 = (1.0 - p) * (p * p - 9.0 * p + 9.0) / std::pow(p, 4);
    EXPECT_NEAR(var, true_var, 3.0 * std::sqrt((mu4 - true_var * true_var) / n)) << "p=" << p;
  }
}

TEST(Rng, GeometricCertainSuccess) {
  Rng rng(3);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(rng.geometric(1.0), 1u);
}

TEST(Rng, BinomialMeanAndEdges) {
  Rng rng(5);
  EXPECT_EQ(rng.binomial(0, 0.3), 0u);
  EXPECT_EQ(rng.binomial(100, 1.0), 100u);
  EXPECT_EQ(rng.binomial(100, 0.0), 0u);
  double sum = 0.0;
  for (int i = 0; i < 2000; ++i) sum += static_cast<double>(rng.binomial(50, 0.3));
  EXPECT_NEAR(sum / 2000, 15.0, 4.0 * std::sqrt(50 * 0.21 / 2000));
}

TEST(Rng, NormalMoments) {
  Rng rng(9);
  const int n = 100000;
  double sum = 0.0, sum2 = 0.0;
  for (int i = 0; i < n; ++i) {
    const double z = rng.normal();
    sum += z;
    sum2 += z * z;
  }
  EXPECT_NEAR(sum / n, 0.0, 4.0 / std::sqrt(n));
  EXPECT_NEAR(sum2 / n, 1.0, 4.0 * std::sqrt(2.0 / n));
}

}  // namespace
}  // namespace qcoin
