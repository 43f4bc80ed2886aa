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

#ifndef BRFP_BASELINE_H_
#define BRFP_BASELINE_H_

#include <Eigen/Dense>

namespace brfp {

// Unevenly sampled series: strictly increasing times, at least 4 points.
struct IrregularSamples {
  Eigen::VectorXd times;
  Eigen::VectorXd values;

  void validate() const;
};

// Classical Lomb-Scargle periodogram at `frequencies` (cycles per time unit,
// all > 0) of the mean-subtracted values:
//
//   P(f) = 1/2 [ (sum y_n cos w(t_n - tau))^2 / sum cos^2 w(t_n - tau)
//              + (sum y_n sin w(t_n - tau))^2 / sum sin^2 w(t_n - tau) ]
//
// with w = 2 pi f and tan(2 w tau) = sum sin 2wt / sum cos 2wt. Unnormalized.
Eigen::VectorXd lomb_scargle(const IrregularSamples& samples,
                             const Eigen::VectorXd& frequencies);

// count points f_j = j * f_max / count, j = 1..count (the grid on
// (0, f_max] that skips the undefined zero frequency).
Eigen::VectorXd lomb_scargle_grid(double f_max, Eigen::Index count);

}  // namespace brfp

#endif  // BRFP_BASELINE_H_
