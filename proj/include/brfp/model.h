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

#ifndef BRFP_MODEL_H_
#define BRFP_MODEL_H_

#include <cstdint>
#include <optional>

#include <Eigen/Dense>

#include "brfp/fourier.h"
#include "brfp/kernels.h"

namespace brfp {

// Gaussian prior x ~ N(m, Sigma) over a signal, together with the Fourier
// operator that pushes it forward to the spectrum. The joint law of
// [x; Xr; Xi] is N(Wbar^T m, Wbar^T Sigma Wbar) with Wbar = [I, Wr, Wi].
class JointGaussianModel {
 public:
  JointGaussianModel(Eigen::VectorXd mean, Eigen::MatrixXd covariance,
                     FourierOperator op);

  // Sigma from `kernel` on `grid`; zero mean unless one is given.
  static JointGaussianModel from_kernel(
      const TimeGrid& grid, const KernelSpec& kernel,
      std::optional<Eigen::VectorXd> mean = std::nullopt);

  // Image prior with the product kernel
  //   k((r, c), (r', c')) = k(r, r') k(c, c') / sigma2
  // on pixel coordinates 0..side-1, i.e. Sigma = Sigma_axis (x) Sigma_axis
  // scaled back to a marginal variance of sigma2.
  static JointGaussianModel image(const FourierOperator2D& op,
                                  const KernelSpec& kernel);

  Eigen::Index size() const { return mean_.size(); }
  const Eigen::VectorXd& mean() const { return mean_; }
  const Eigen::MatrixXd& covariance() const { return covariance_; }
  const FourierOperator& op() const { return op_; }

  // [I, Wr, Wi], N x 3N.
  Eigen::MatrixXd augmented_operator() const;

 private:
  Eigen::VectorXd mean_;
  Eigen::MatrixXd covariance_;
  FourierOperator op_;
};

struct JointMoments {
  Eigen::VectorXd mean;        // 3N, blocks [time, real, imag]
  Eigen::MatrixXd covariance;  // 3N x 3N
};

JointMoments joint_moments(const JointGaussianModel& model);

struct CovarianceBlocks {
  Eigen::MatrixXd real;       // Kr  = Wr^T Sigma Wr
  Eigen::MatrixXd imag;       // Ki  = Wi^T Sigma Wi
  Eigen::MatrixXd time_real;  // Ktr = Sigma Wr
  Eigen::MatrixXd time_imag;  // Kti = Sigma Wi
};

CovarianceBlocks covariance_blocks(const JointGaussianModel& model);

struct FourierPairSample {
  Eigen::VectorXd x;
  SpectrumPair spectrum;
};

// Draws x ~ N(mean, covariance) and sets the spectrum to forward(x). The
// joint 3N covariance is rank deficient and is never factored. The signal
// covariance is factored once at construction (jitter ladder applies). If
// that fails, a symmetric square root with clipped eigenvalues is used;
// eigenvalues down to -1e-8 * max(scale, largest |eigenvalue|) count as
// rounding. Pass the prior variance as `scale` for posterior covariances.
class HierarchicalSampler {
 public:
  HierarchicalSampler(Eigen::VectorXd mean, const Eigen::MatrixXd& covariance,
                      FourierOperator op, double scale = 0.0);
  explicit HierarchicalSampler(const JointGaussianModel& model);

  // Sample `index` of the run seeded with `seed`; uses the generator stream
  // stream_seed(seed, index).
  FourierPairSample draw(std::uint64_t seed, std::uint64_t index = 0) const;

  Eigen::Index size() const { return mean_.size(); }
  const FourierOperator& op() const { return op_; }
  // Zero when the eigendecomposition fallback was used.
  double jitter() const { return jitter_; }

 private:
  Eigen::VectorXd mean_;
  Eigen::MatrixXd root_;
  double jitter_ = 0.0;
  FourierOperator op_;
};

FourierPairSample sample_pair(const JointGaussianModel& model,
                              std::uint64_t seed);

inline constexpr int kDefaultPowerSamples = 1000;

// Monte Carlo power spectrum p_k = Xr_k^2 + Xi_k^2 with pointwise mean and
// 2.5 / 97.5 percentiles (linear interpolation between order statistics).
struct PowerSpectrumSamples {
  Eigen::MatrixXd samples;  // count x N
  Eigen::VectorXd mean;
  Eigen::VectorXd lower;
  Eigen::VectorXd upper;
};

PowerSpectrumSamples power_spectrum_samples(const HierarchicalSampler& sampler,
                                            int count, std::uint64_t seed);

// Quantile q in [0, 1] of `values` with linear interpolation (numpy's
// default rule).
double empirical_quantile(Eigen::VectorXd values, double q);

}  // namespace brfp

#endif  // BRFP_MODEL_H_
