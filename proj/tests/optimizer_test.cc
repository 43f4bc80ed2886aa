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

#include "brfp/optimizer.h"

#include <cmath>
#include <limits>

#include <gtest/gtest.h>

namespace brfp {
namespace {

TEST(NelderMeadTest, MinimisesQuadratic) {
  const auto f = [](const Eigen::VectorXd& v) {
    return (v - Eigen::Vector3d(1.0, -2.0, 0.5)).squaredNorm() + 3.0;
  };
  NelderMeadOptions options;
  options.relative_tolerance = 1e-12;
  options.max_iterations = 2000;
  const NelderMeadResult r = nelder_mead(f, Eigen::Vector3d::Zero(), options);
  EXPECT_TRUE(r.converged);
  EXPECT_NEAR(r.value, 3.0, 1e-9);
  EXPECT_LT((r.argmin - Eigen::Vector3d(1.0, -2.0, 0.5)).norm(), 1e-4);
}

TEST(NelderMeadTest, MinimisesRosenbrock) {
  const auto f = [](const Eigen::VectorXd& v) {
    return 100.0 * std::pow(v[1] - v[0] * v[0], 2) + std::pow(1.0 - v[0], 2);
  };
  NelderMeadOptions options;
  options.max_iterations = 5000;
  options.relative_tolerance = 1e-14;
  const NelderMeadResult r =
      nelder_mead(f, Eigen::Vector2d(-1.2, 1.0), options);
  EXPECT_LT((r.argmin - Eigen::Vector2d(1.0, 1.0)).norm(), 1e-3);
}

TEST(NelderMeadTest, TraceIsMonotoneBestSoFar) {
  const auto f = [](const Eigen::VectorXd& v) {
    return std::abs(v[0] - 3.0) + std::pow(v[1], 2);
  };
  const NelderMeadResult r = nelder_mead(f, Eigen::Vector2d(0.0, 2.0));
  ASSERT_FALSE(r.trace.empty());
  for (std::size_t i = 1; i < r.trace.size(); ++i) {
    EXPECT_LE(r.trace[i], r.trace[i - 1]);
  }
  EXPECT_EQ(r.trace.back(), r.value);
}

TEST(NelderMeadTest, TreatsNonFiniteValuesAsInfinite) {
  const auto f = [](const Eigen::VectorXd& v) {
    if (v[0] < 0.0) return std::numeric_limits<double>::quiet_NaN();
    return std::pow(v[0] - 1.0, 2);
  };
  const NelderMeadResult r = nelder_mead(f, Eigen::VectorXd::Constant(1, 0.2));
  EXPECT_NEAR(r.argmin[0], 1.0, 1e-3);
  EXPECT_TRUE(std::isfinite(r.value));
}

TEST(NelderMeadTest, StopsAtIterationLimit) {
  const auto f = [](const Eigen::VectorXd& v) { return v.squaredNorm(); };
  NelderMeadOptions options;
  options.max_iterations = 3;
  const NelderMeadResult r = nelder_mead(f, Eigen::Vector2d(5.0, 5.0), options);
  EXPECT_LE(r.iterations, 3);
  EXPECT_FALSE(r.converged);
}

}  // namespace
}  // namespace brfp
