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

#ifndef BRFP_OBSERVATION_H_
#define BRFP_OBSERVATION_H_

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "brfp/model.h"

namespace brfp {

// 0/1 selection matrix H (latent_size x M) stored as the list of observed
// latent indices: [H]_{p,q} = 1 iff p = indices[q].
class SelectionMatrix {
 public:
  SelectionMatrix() = default;
  // Indices must be strictly increasing and inside [0, latent_size).
  SelectionMatrix(Eigen::Index latent_size, std::vector<Eigen::Index> indices);

  static SelectionMatrix all(Eigen::Index latent_size);

  Eigen::Index latent_size() const { return latent_size_; }
  Eigen::Index size() const { return static_cast<Eigen::Index>(indices_.size()); }
  bool empty() const { return indices_.empty(); }
  const std::vector<Eigen::Index>& indices() const { return indices_; }

  // H^T v.
  Eigen::VectorXd gather(const Eigen::VectorXd& v) const;
  // Rows `indices` of m, i.e. H^T m.
  Eigen::MatrixXd gather_rows(const Eigen::MatrixXd& m) const;
  // Dense latent_size x M matrix.
  Eigen::MatrixXd dense() const;

 private:
  Eigen::Index latent_size_ = 0;
  std::vector<Eigen::Index> indices_;
};

struct TemporalObservations {
  SelectionMatrix selection;
  Eigen::VectorXd values;  // y
  double noise_variance = 0.0;
};

// Real and imaginary parts observed at the same frequency indices.
struct SpectralObservations {
  SelectionMatrix selection;
  Eigen::VectorXd real;  // Yr
  Eigen::VectorXd imag;  // Yi
  double noise_variance = 0.0;
};

struct ObservationSet {
  TemporalObservations temporal;
  SpectralObservations spectral;

  Eigen::Index temporal_count() const { return temporal.selection.size(); }
  Eigen::Index spectral_count() const { return spectral.selection.size(); }
  // Length of the augmented observation vector, Mt + 2 Mf.
  Eigen::Index augmented_size() const {
    return temporal_count() + 2 * spectral_count();
  }
  bool empty() const { return augmented_size() == 0; }

  // Checks value lengths, noise variances, and (when latent_size > 0) that
  // both selections live on a latent vector of that size.
  void validate(Eigen::Index latent_size = 0) const;
};

// Y = HW x + eps with rows ordered [temporal; spectral real; spectral imag].
struct AugmentedSystem {
  Eigen::MatrixXd hw;             // (Mt + 2 Mf) x N
  Eigen::VectorXd noise;          // diagonal of Lambda_obs
  Eigen::VectorXd observations;   // [y; Yr; Yi]

  Eigen::MatrixXd noise_covariance() const;
};

AugmentedSystem assemble(const JointGaussianModel& model,
                         const ObservationSet& obs);

// Noiseless observation of x by index gathering (the same rows as
// assemble(...).hw * x, without forming the matrix).
Eigen::VectorXd observe(const FourierOperator& op, const ObservationSet& obs,
                        const Eigen::VectorXd& x);

// y = H_t^T x + e, Yr = H_f^T Xr + e_r, Yi = H_f^T Xi + e_i with independent
// N(0, sigma2) noise drawn from the generator seeded with `seed`.
ObservationSet corrupt(const FourierPairSample& truth,
                       const std::vector<Eigen::Index>& temporal_indices,
                       const std::vector<Eigen::Index>& spectral_indices,
                       double temporal_noise, double spectral_noise,
                       std::uint64_t seed);

// floor(fraction * n) with a minimum of 1 (0 stays 0).
Eigen::Index fraction_to_count(double fraction, Eigen::Index n);

}  // namespace brfp

#endif  // BRFP_OBSERVATION_H_
