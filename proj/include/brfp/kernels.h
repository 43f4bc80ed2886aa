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

#ifndef BRFP_KERNELS_H_
#define BRFP_KERNELS_H_

#include <string>
#include <string_view>

#include <Eigen/Dense>

namespace brfp {

// Sample locations shared by the latent signal and every operator built on
// it. Points are strictly increasing and there are at least two of them.
class TimeGrid {
 public:
  explicit TimeGrid(Eigen::VectorXd points);

  // n evenly spaced points start, start + step, ..., with step chosen so that
  // the last point equals `end` (inclusive, like numpy.linspace).
  static TimeGrid linspace(double start, double end, Eigen::Index n);
  // n points start + i * step, i = 0..n-1 (end-exclusive periodic grid).
  static TimeGrid regular(double start, double step, Eigen::Index n);
  // Sample indices 0, 1, ..., n-1.
  static TimeGrid index(Eigen::Index n);

  Eigen::Index size() const { return points_.size(); }
  const Eigen::VectorXd& points() const { return points_; }
  double operator[](Eigen::Index i) const { return points_[i]; }
  // Mean spacing; the physical frequency of DFT bin k is k / (size * spacing).
  double spacing() const;

 private:
  Eigen::VectorXd points_;
};

enum class KernelFamily { kSquaredExponential, kPeriodic };

std::string_view to_string(KernelFamily family);
// Accepts the names written by to_string plus the short forms "se" and
// "periodic" (case-insensitive).
KernelFamily parse_kernel_family(std::string_view name);

// Stationary covariance function with its hyperparameters:
//   SquaredExponential  k(t, t') = sigma2 exp(-alpha (t - t')^2)
//   Periodic            k(t, t') = sigma2 exp(-alpha sin^2(beta |t - t'|))
// alpha is in the units of the grid the kernel is evaluated on, so alpha on
// the index grid equals alpha * (N - 1)^2 on the unit interval linspace.
struct KernelSpec {
  KernelFamily family = KernelFamily::kSquaredExponential;
  double sigma2 = 1.0;
  double alpha = 1.0;
  double beta = 1.0;

  static KernelSpec squared_exponential(double sigma2, double alpha);
  static KernelSpec periodic(double sigma2, double alpha, double beta);

  // Throws InvalidInput unless sigma2 >= 0, alpha > 0, and (periodic) beta > 0.
  void validate() const;
  double operator()(double t, double t_prime) const;

  // Number of trainable hyperparameters (2 for SE, 3 for periodic).
  int num_parameters() const;
  // log(sigma2), log(alpha)[, log(beta)].
  Eigen::VectorXd log_parameters() const;
  KernelSpec with_log_parameters(const Eigen::VectorXd& log_params) const;
};

// Sigma[i, j] = k(t_i, t_j). Symmetric with diagonal sigma2.
Eigen::MatrixXd build_covariance(const TimeGrid& grid, const KernelSpec& spec);

struct CholeskyFactor {
  Eigen::MatrixXd lower;
  // Diagonal loading actually added before the factorization succeeded.
  double jitter = 0.0;
};

// Lower-triangular L with L L^T = sigma + jitter I.
//
// The requested jitter is tried first. If the factorization fails (or yields
// a pivot below 1e-14 of the scale) the loading restarts at 1e-10 * scale and
// grows by decades up to 1e-4 * scale, where scale is the largest diagonal
// entry (sigma2 for kernel matrices). An all-zero matrix factors to zero.
// Throws NumericalError when the cap is reached.
CholeskyFactor jittered_cholesky(const Eigen::MatrixXd& sigma,
                                 double jitter = 0.0);

}  // namespace brfp

#endif  // BRFP_KERNELS_H_
