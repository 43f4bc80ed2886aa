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

#include "brfp/error.h"

namespace brfp {

void IrregularSamples::validate() const {
  if (times.size() != values.size()) {
    throw InvalidInput("irregular samples: times and values differ in length");
  }
  if (times.size() < 4) {
    throw InvalidInput("irregular samples: need at least 4 points");
  }
  if (!times.allFinite() || !values.allFinite()) {
    throw InvalidInput("irregular samples: non-finite entries");
  }
  if (times.maxCoeff() == times.minCoeff()) {
    throw InvalidInput("irregular samples: all times are equal");
  }
  for (Eigen::Index i = 1; i < times.size(); ++i) {
    if (!(times[i] > times[i - 1])) {
      throw InvalidInput("irregular samples: times must be strictly increasing");
    }
  }
}

Eigen::VectorXd lomb_scargle(const IrregularSamples& samples,
                             const Eigen::VectorXd& frequencies) {
  samples.validate();
  const Eigen::VectorXd y =
      samples.values.array() - samples.values.mean();
  const Eigen::VectorXd& t = samples.times;
  Eigen::VectorXd power(frequencies.size());
  for (Eigen::Index j = 0; j < frequencies.size(); ++j) {
    const double f = frequencies[j];
    if (!(f > 0.0) || !std::isfinite(f)) {
      throw InvalidInput("lomb-scargle: frequencies must be > 0");
    }
    const double w = 2.0 * std::numbers::pi * f;
    double s2 = 0.0;
    double c2 = 0.0;
    for (Eigen::Index n = 0; n < t.size(); ++n) {
      s2 += std::sin(2.0 * w * t[n]);
      c2 += std::cos(2.0 * w * t[n]);
    }
    const double tau = std::atan2(s2, c2) / (2.0 * w);
    double yc = 0.0, ys = 0.0, cc = 0.0, ss = 0.0;
    for (Eigen::Index n = 0; n < t.size(); ++n) {
      const double phase = w * (t[n] - tau);
      const double c = std::cos(phase);
      const double s = std::sin(phase);
      yc += y[n] * c;
      ys += y[n] * s;
      cc += c * c;
      ss += s * s;
    }
    double p = 0.0;
    if (cc > 0.0) p += yc * yc / cc;
    if (ss > 0.0) p += ys * ys / ss;
    power[j] = 0.5 * p;
  }
  return power;
}

Eigen::VectorXd lomb_scargle_grid(double f_max, Eigen::Index count) {
  if (!(f_max > 0.0) || count < 1) {
    throw InvalidInput("lomb-scargle grid: need f_max > 0 and count >= 1");
  }
  Eigen::VectorXd out(count);
  for (Eigen::Index j = 0; j < count; ++j) {
    out[j] = f_max * static_cast<double>(j + 1) / static_cast<double>(count);
  }
  return out;
}

}  // namespace brfp
