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

#ifndef BRFP_INFERENCE_H_
#define BRFP_INFERENCE_H_

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "brfp/kernels.h"
#include "brfp/model.h"
#include "brfp/observation.h"

namespace brfp {

enum class Block { kTime, kReal, kImag };

std::string_view to_string(Block block);

struct LikelihoodEvaluation {
  double log_likelihood = 0.0;
  Eigen::VectorXd observation_mean;        // m_obs = HW m
  Eigen::MatrixXd observation_covariance;  // Sigma_obs = HW Sigma HW^T + Lambda
  CholeskyFactor factor;                   // of Sigma_obs (+ jitter)
};

// log N(Y; m_obs, Sigma_obs). Zero noise variances fall back on the jitter
// ladder. Throws InvalidInput for an empty observation set and
// NumericalError if Sigma_obs cannot be factored.
LikelihoodEvaluation log_likelihood(const JointGaussianModel& model,
                                    const ObservationSet& obs);

// Gaussian posterior over the requested latent blocks, stacked in the order
// given.
struct PosteriorResult {
  std::vector<Block> blocks;
  Eigen::Index block_size = 0;
  Eigen::VectorXd mean;
  Eigen::MatrixXd covariance;
  Eigen::VectorXd marginal_std;
  // Diagonal loading used when factoring Sigma_obs.
  double jitter = 0.0;

  bool has(Block block) const;
  Eigen::VectorXd block_mean(Block block) const;
  Eigen::MatrixXd block_covariance(Block block) const;
  Eigen::VectorXd block_std(Block block) const;

 private:
  Eigen::Index offset(Block block) const;
};

// Conditions [x; Xr; Xi] on the augmented observation:
//   mean = m_lat + S_lo Sigma_obs^-1 (Y - m_obs)
//   cov  = S_lat - S_lo Sigma_obs^-1 S_lo^T
// with S_lo = Wsel^T Sigma HW^T for the selected blocks. When Sigma_obs needs
// diagonal loading the solves are refined against the unloaded matrix.
PosteriorResult posterior(const JointGaussianModel& model,
                          const ObservationSet& obs,
                          const std::vector<Block>& blocks);

// Spectrum given temporal observations only, written as
//   mean = W^T (m + Sigma Ht G^-1 (y - Ht^T m))
//   cov  = W^T (Sigma - Sigma Ht G^-1 Ht^T Sigma) W,  G = Ht^T Sigma Ht + s2 I
// where W^T stacks Wr^T over Wi^T. Blocks are {real, imag}.
PosteriorResult spectral_posterior_given_time(const JointGaussianModel& model,
                                              const ObservationSet& obs);

// Same spectral covariance through the information form
//   W^T (Sigma^-1 + Ht Ht^T / s2)^-1 W.
// Requires a positive temporal noise variance.
Eigen::MatrixXd spectral_covariance_woodbury(const JointGaussianModel& model,
                                             const ObservationSet& obs);

// Time-block posterior from spectral observations only.
PosteriorResult temporal_posterior_given_spectrum(
    const JointGaussianModel& model, const ObservationSet& obs);

// Everything needed to rebuild a model from trial hyperparameters.
struct ModelTemplate {
  TimeGrid grid;
  KernelSpec kernel;
  std::optional<Eigen::VectorXd> mean;
};

struct TrainingOptions {
  // Random restarts in addition to the run started at the template values.
  int restarts = 5;
  // Restart points are log-uniform within this many decades of the template.
  double restart_decades = 2.0;
  int max_iterations = 500;
  double relative_tolerance = 1e-6;
  bool train_temporal_noise = false;
  bool train_spectral_noise = false;
  std::uint64_t seed = 0;
};

struct TrainingReport {
  KernelSpec initial_kernel;
  KernelSpec final_kernel;
  double initial_temporal_noise = 0.0;
  double final_temporal_noise = 0.0;
  double initial_spectral_noise = 0.0;
  double final_spectral_noise = 0.0;
  double initial_log_likelihood = 0.0;
  double final_log_likelihood = 0.0;
  // Best-so-far log-likelihood of the winning run, one entry per iteration.
  std::vector<double> trace;
  int iterations = 0;
  int best_restart = 0;
  bool converged = false;
};

// Maximum likelihood over log kernel hyperparameters (and optionally log
// noise variances) by Nelder-Mead with restarts. Restarts run concurrently;
// the best run wins with ties going to the lower restart index.
TrainingReport train(const ModelTemplate& model_template,
                     const ObservationSet& obs,
                     const TrainingOptions& options = {});

// obs with the noise variances replaced by the report's final values.
ObservationSet with_trained_noise(ObservationSet obs,
                                  const TrainingReport& report);

}  // namespace brfp

#endif  // BRFP_INFERENCE_H_
