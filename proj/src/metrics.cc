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
#include <string>

#include "brfp/error.h"

namespace brfp {

namespace {

void check_lengths(const Eigen::VectorXd& a, const Eigen::VectorXd& b,
                   const char* what) {
  if (a.size() != b.size()) {
    throw InvalidInput(std::string(what) + ": length mismatch (" +
                       std::to_string(a.size()) + " vs " +
                       std::to_string(b.size()) + ")");
  }
  if (a.size() == 0) throw InvalidInput(std::string(what) + ": empty input");
}

Eigen::VectorXd normalized_psd(const Eigen::VectorXd& p, const char* name) {
  if ((p.array() < 0.0).any() || !p.allFinite()) {
    throw InvalidInput(std::string("kl: ") + name +
                       " must be finite and nonnegative");
  }
  const double total = p.sum();
  if (total <= 0.0) {
    throw InvalidInput(std::string("kl: ") + name + " is identically zero");
  }
  return p / total;
}

}  // namespace

double nmse(const Eigen::VectorXd& truth, const Eigen::VectorXd& estimate) {
  check_lengths(truth, estimate, "nmse");
  const double energy = truth.squaredNorm();
  if (energy == 0.0) throw InvalidInput("nmse: ground truth is all zero");
  return (truth - estimate).squaredNorm() / energy;
}

double l01(const Eigen::VectorXd& p, const Eigen::VectorXd& p_hat) {
  check_lengths(p, p_hat, "l01");
  const double sum = (p - p_hat).cwiseAbs().array().pow(0.1).sum();
  return std::pow(sum, 10.0) / static_cast<double>(p.size());
}

double kl_divergence(const Eigen::VectorXd& p, const Eigen::VectorXd& p_hat,
                     const KlOptions& options) {
  check_lengths(p, p_hat, "kl");
  Eigen::VectorXd reference = p_hat;
  if (options.floor) {
    if (!(*options.floor > 0.0)) throw InvalidInput("kl: floor must be > 0");
    reference = reference.cwiseMax(*options.floor);
  }
  const Eigen::VectorXd target = normalized_psd(p, "p");
  reference = normalized_psd(reference, "p_hat");
  double total = 0.0;
  for (Eigen::Index k = 0; k < target.size(); ++k) {
    if (target[k] == 0.0) continue;
    if (reference[k] == 0.0) return std::numeric_limits<double>::infinity();
    total += target[k] * std::log(target[k] / reference[k]);
  }
  return total;
}

}  // namespace brfp
