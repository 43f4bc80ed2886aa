// Copyright 2026 The BRFP Authors.
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

#include "brfp/random.h"

#include <set>

#include <gtest/gtest.h>

#include "brfp/error.h"

namespace brfp {
namespace {

TEST(RngTest, SameSeedSameStream) {
  Rng a(42);
  Rng b(42);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(a.normal(), b.normal());
}

TEST(RngTest, StreamSeedsDiffer) {
  std::set<std::uint64_t> seen;
  for (std::uint64_t i = 0; i < 1000; ++i) seen.insert(stream_seed(7, i));
  EXPECT_EQ(seen.size(), 1000u);
  EXPECT_NE(stream_seed(7, 0), stream_seed(8, 0));
}

TEST(RngTest, UniformInUnitInterval) {
  Rng rng(1);
  double sum = 0.0;
  for (int i = 0; i < 100000; ++i) {
    const double u = rng.uniform();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    sum += u;
  }
  EXPECT_NEAR(sum / 100000.0, 0.5, 0.01);
}

TEST(RngTest, NormalMoments) {
  Rng rng(2);
  const Eigen::VectorXd z = rng.normal_vector(200000);
  EXPECT_NEAR(z.mean(), 0.0, 0.01);
  EXPECT_NEAR((z.array() - z.mean()).square().mean(), 1.0, 0.02);
}

TEST(RngTest, ChooseIsSortedUniqueAndInRange) {
  Rng rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    const auto idx = rng.choose(50, 17);
    ASSERT_EQ(idx.size(), 17u);
    for (std::size_t i = 0; i < idx.size(); ++i) {
      EXPECT_GE(idx[i], 0);
      EXPECT_LT(idx[i], 50);
      if (i > 0) EXPECT_LT(idx[i - 1], idx[i]);
    }
  }
  EXPECT_EQ(rng.choose(5, 5).size(), 5u);
  EXPECT_TRUE(rng.choose(5, 0).empty());
  EXPECT_THROW(rng.choose(5, 6), InvalidInput);
}

TEST(RngTest, BelowIsRoughlyUniform) {
  Rng rng(4);
  std::vector<int> counts(6, 0);
  for (int i = 0; i < 60000; ++i) ++counts[rng.below(6)];
  for (const int c : counts) EXPECT_NEAR(c, 10000, 500);
}

}  // namespace
}  // namespace brfp
