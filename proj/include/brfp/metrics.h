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

#ifndef BRFP_METRICS_H_
#define BRFP_METRICS_H_

#include <optional>

#include <Eigen/Dense>

namespace brfp {

// sum (x - x_hat)^2 / sum x^2. Throws InvalidInput for a zero-norm truth or
// mismatched lengths.
double nmse(const Eigen::VectorXd& truth, const Eigen::VectorXd& estimate);

// (1/N) (sum_k |p_k - p_hat_k|^0.1)^10, with the 1/N applied after the
// tenth power. Emphasizes many small deviations over a few large ones.
double l01(const Eigen::VectorXd& p, const Eigen::VectorXd& p_hat);

struct KlOptions {
  // When set, p_hat entries are raised to at least this value before
  // normalization. Off by default so missing energy costs +inf.
  std::optional<double> floor;
};

// sum_k p_k log(p_k / p_hat_k) (natural log) after normalizing both inputs
// to unit sum. 0 log(0 / .) = 0, and p_k > 0 with p_hat_k = 0 gives +inf.
double kl_divergence(const Eigen::VectorXd& p, const Eigen::VectorXd& p_hat,
                     const KlOptions& options = {});

}  // namespace brfp

#endif  // BRFP_METRICS_H_
