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

#ifndef BRFP_OPTIMIZER_H_
#define BRFP_OPTIMIZER_H_

#include <functional>
#include <vector>

#include <Eigen/Dense>

namespace brfp {

struct NelderMeadOptions {
  int max_iterations = 500;
  // Stop when 2 |f_worst - f_best| <= tolerance (|f_worst| + |f_best|) + tiny.
  double relative_tolerance = 1e-6;
  // Edge length of the initial simplex along each axis.
  double initial_step = 0.5;
};

struct NelderMeadResult {
  Eigen::VectorXd argmin;
  double value = 0.0;
  int iterations = 0;
  int evaluations = 0;
  bool converged = false;
  // Best value seen so far, recorded once at the start and after every
  // iteration. Non-increasing.
  std::vector<double> trace;
};

// Derivative-free simplex minimization (standard reflection 1, expansion 2,
// contraction 1/2, shrink 1/2 coefficients). Non-finite objective values are
// treated as +infinity.
NelderMeadResult nelder_mead(
    const std::function<double(const Eigen::VectorXd&)>& objective,
    const Eigen::VectorXd& start, const NelderMeadOptions& options = {});

}  // namespace brfp

#endif  // BRFP_OPTIMIZER_H_
