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

#include "brfp/baseline.h"

#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "brfp/error.h"
#include "brfp/experiments.h"
#include "brfp/random.h"

namespace brfp {
namespace {

IrregularSamples random_samples(int count, double duration, std::uint64_t seed,
                                double (*f)(double)) {
  Rng rng(seed);
  std::vector<double> t(static_cast<std::size_t>(count));
  for (double& v : t) v = duration * rng.uniform();
  std::sort(t.begin(), t.end());
  IrregularSamples s;
  s.times = Eigen::Map<Eigen::VectorXd>(t.data(), count);
  s.values.resize(count);
  for (int i = 0; i < count; ++i) s.values[i] = f(s.times[i]);
  return s;
}

Eigen::Index nearest(const Eigen::VectorXd& grid, double f) {
  Eigen::Index best = 0;
  (grid.array() - f).abs().minCoeff(&best);
  return best;
}

TEST(LombScargleTest, PureSinusoidPeaksAtItsFrequency) {
  const IrregularSamples s = random_samples(
      100, 10.0, 1, [](double t) { return std::cos(2.0 * std::numbers::pi * 0.5 * t); });
  const Eigen::VectorXd freqs = lomb_scargle_grid(4.0 / std::numbers::pi, 256);
  Eigen::Index argmax = 0;
  lomb_scargle(s, freqs).maxCoeff(&argmax);
  EXPECT_EQ(argmax, nearest(freqs, 0.5));
}

TEST(LombScargleTest, ConstantSignalHasNoPower) {
  const IrregularSamples s =
      random_samples(30, 5.0, 2, [](double) { return 3.0; });
  const Eigen::VectorXd power = lomb_scargle(s, lomb_scargle_grid(2.0, 64));
  EXPECT_LT(power.cwiseAbs().maxCoeff(), 1e-10);
}

TEST(LombScargleTest, SumOfSinesHasTwoDominantPeaks) {
  Rng noise(3);
  IrregularSamples s = random_samples(52, 10.0, 3, sum_of_sines);
  for (Eigen::Index i = 0; i < s.values.size(); ++i) {
    s.values[i] += 0.5 * noise.normal();
  }
  const Eigen::VectorXd freqs = lomb_scargle_grid(4.0 / std::numbers::pi, 256);
  const Eigen::VectorXd power = lomb_scargle(s, freqs);
  const auto peaks = local_maxima(power, 1, power.size() - 2);
  ASSERT_GE(peaks.size(), 2u);
  std::vector<Eigen::Index> ranked = peaks;
  std::sort(ranked.begin(), ranked.end(), [&](Eigen::Index a, Eigen::Index b) {
    return power[a] > power[b];
  });
  std::vector<double> top = {freqs[ranked[0]], freqs[ranked[1]]};
  std::sort(top.begin(), top.end());
  EXPECT_NEAR(top[0], 0.5, 0.05);
  EXPECT_NEAR(top[1], 1.0, 0.05);
}

TEST(LombScargleTest, PowerIsNonNegative) {
  Rng rng(4);
  for (int trial = 0; trial < 10; ++trial) {
    IrregularSamples s = random_samples(
        20, 7.0, 10 + trial, [](double t) { return std::sin(1.3 * t); });
    s.values += rng.normal_vector(20);
    EXPECT_GE(lomb_scargle(s, lomb_scargle_grid(3.0, 100)).minCoeff(), 0.0);
  }
}

TEST(LombScargleTest, EvenlySampledOnGridSinusoid) {
  IrregularSamples s;
  s.times = Eigen::VectorXd::LinSpaced(64, 0.0, 63.0 / 8.0);
  const double f0 = 1.25;
  s.values = (2.0 * std::numbers::pi * f0 * s.times.array()).sin();
  const Eigen::VectorXd freqs = lomb_scargle_grid(4.0, 32);
  Eigen::Index argmax = 0;
  lomb_scargle(s, freqs).maxCoeff(&argmax);
  EXPECT_LE(std::abs(freqs[argmax] - f0), freqs[1] - freqs[0]);
}

TEST(LombScargleTest, Errors) {
  IrregularSamples s;
  s.times = Eigen::VectorXd::Constant(5, 1.0);
  s.values = Eigen::VectorXd::LinSpaced(5, 0.0, 1.0);
  EXPECT_THROW(lomb_scargle(s, lomb_scargle_grid(1.0, 4)), InvalidInput);
  s.times = Eigen::VectorXd::LinSpaced(3, 0.0, 1.0);
  s.values = Eigen::VectorXd::Zero(3);
  EXPECT_THROW(s.validate(), InvalidInput);
  s.times = Eigen::VectorXd::LinSpaced(5, 0.0, 1.0);
  s.values = Eigen::VectorXd::LinSpaced(5, 0.0, 1.0);
  EXPECT_THROW(lomb_scargle(s, Eigen::Vector2d(0.0, 1.0)), InvalidInput);
}

TEST(LombScargleGridTest, SkipsZeroAndEndsAtMaximum) {
  const Eigen::VectorXd g = lomb_scargle_grid(2.0, 4);
  EXPECT_EQ(g, Eigen::Vector4d(0.5, 1.0, 1.5, 2.0));
}

}  // namespace
}  // namespace brfp
