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

#include "brfp/metrics.h"

#include <cmath>
#include <limits>

#include <gtest/gtest.h>

#include "brfp/error.h"
#include "brfp/random.h"

namespace brfp {
namespace {

TEST(NmseTest, HandCases) {
  const Eigen::Vector2d truth(1.0, 2.0);
  EXPECT_EQ(nmse(truth, truth), 0.0);
  EXPECT_EQ(nmse(truth, Eigen::Vector2d::Zero()), 1.0);
  EXPECT_EQ(nmse(truth, Eigen::Vector2d(1.0, 0.0)), 0.8);
}

TEST(NmseTest, Errors) {
  EXPECT_THROW(nmse(Eigen::Vector2d::Zero(), Eigen::Vector2d::Ones()),
               InvalidInput);
  EXPECT_THROW(nmse(Eigen::Vector2d::Ones(), Eigen::Vector3d::Ones()),
               InvalidInput);
}

TEST(NmseTest, ScalesQuadraticallyInTheError) {
  Rng rng(1);
  for (int trial = 0; trial < 20; ++trial) {
    const Eigen::VectorXd x = rng.normal_vector(12);
    const Eigen::VectorXd e = rng.normal_vector(12);
    const double c = 0.1 + 3.0 * rng.uniform();
    EXPECT_NEAR(nmse(x, x + c * e), c * c * nmse(x, x + e),
                1e-12 * c * c * nmse(x, x + e));
  }
}

TEST(L01Test, HandCases) {
  EXPECT_EQ(l01(Eigen::Vector3d(1, 2, 3), Eigen::Vector3d(1, 2, 3)), 0.0);
  EXPECT_EQ(l01(Eigen::VectorXd::Constant(1, 3.0),
                Eigen::VectorXd::Constant(1, 2.0)),
            1.0);
  EXPECT_EQ(l01(Eigen::Vector2d(1, 1), Eigen::Vector2d(0, 0)), 512.0);
  EXPECT_THROW(l01(Eigen::Vector2d(1, 1), Eigen::Vector3d(0, 0, 0)),
               InvalidInput);
}

TEST(L01Test, ZeroOnlyForEqualVectors) {
  Rng rng(2);
  for (int trial = 0; trial < 20; ++trial) {
    const Eigen::VectorXd p = rng.normal_vector(6).cwiseAbs();
    Eigen::VectorXd q = p;
    EXPECT_EQ(l01(p, q), 0.0);
    q[static_cast<Eigen::Index>(rng.below(6))] += 1e-15 + rng.uniform();
    EXPECT_GT(l01(p, q), 0.0);
  }
}

TEST(KlTest, HandCases) {
  const Eigen::Vector2d p(0.5, 0.5);
  EXPECT_EQ(kl_divergence(p, p), 0.0);
  EXPECT_EQ(kl_divergence(Eigen::Vector2d(1, 0), Eigen::Vector2d(0, 1)),
            std::numeric_limits<double>::infinity());
  EXPECT_NEAR(kl_divergence(p, Eigen::Vector2d(0.25, 0.75)),
              0.5 * std::log(2.0) + 0.5 * std::log(2.0 / 3.0), 1e-15);
  EXPECT_NEAR(kl_divergence(p, Eigen::Vector2d(0.25, 0.75)), 0.14384, 1e-5);
}

TEST(KlTest, SelfDivergenceIsExactlyZero) {
  Rng rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    Eigen::VectorXd p = rng.normal_vector(20).cwiseAbs();
    p[static_cast<Eigen::Index>(rng.below(20))] = 0.0;
    EXPECT_EQ(kl_divergence(p, p), 0.0);
  }
}

TEST(KlTest, NormalisesInternally) {
  EXPECT_NEAR(kl_divergence(Eigen::Vector2d(2, 2), Eigen::Vector2d(1, 3)),
              kl_divergence(Eigen::Vector2d(0.5, 0.5), Eigen::Vector2d(0.25, 0.75)),
              1e-15);
}

TEST(KlTest, FloorMakesMissingSupportFinite) {
  const double kl = kl_divergence(Eigen::Vector2d(1, 0), Eigen::Vector2d(0, 1),
                                  KlOptions{1e-6});
  EXPECT_TRUE(std::isfinite(kl));
  EXPECT_GT(kl, 0.0);
}

TEST(KlTest, Errors) {
  EXPECT_THROW(kl_divergence(Eigen::Vector2d::Zero(), Eigen::Vector2d::Ones()),
               InvalidInput);
  EXPECT_THROW(kl_divergence(Eigen::Vector2d(-1, 2), Eigen::Vector2d::Ones()),
               InvalidInput);
}

}  // namespace
}  // namespace brfp
