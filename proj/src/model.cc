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

#include "brfp/model.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "brfp/error.h"
#include "brfp/random.h"

namespace brfp {

JointGaussianModel::JointGaussianModel(Eigen::VectorXd mean,
                                       Eigen::MatrixXd covariance,
                                       FourierOperator op)
    : mean_(std::move(mean)),
      covariance_(std::move(covariance)),
      op_(std::move(op)) {
  const Eigen::Index n = op_.size();
  if (mean_.size() != n || covariance_.rows() != n ||
      covariance_.cols() != n) {
    throw InvalidInput("model: mean/covariance size does not match operator " +
                       std::to_string(n));
  }
}

JointGaussianModel JointGaussianModel::from_kernel(
    const TimeGrid& grid, const KernelSpec& kernel,
    std::optional<Eigen::VectorXd> mean) {
  Eigen::VectorXd m =
      mean ? std::move(*mean) : Eigen::VectorXd::Zero(grid.size());
  if (m.size() != grid.size()) {
    throw InvalidInput("prior mean length " + std::to_string(m.size()) +
                       " does not match grid size " +
                       std::to_string(grid.size()));
  }
  return JointGaussianModel(std::move(m), build_covariance(grid, kernel),
                            build_operator(grid.size()));
}

JointGaussianModel JointGaussianModel::image(const FourierOperator2D& op,
                                             const KernelSpec& kernel) {
  const Eigen::Index side = op.side();
  KernelSpec unit = kernel;
  unit.sigma2 = 1.0;
  const Eigen::MatrixXd axis = build_covariance(TimeGrid::index(side), unit);
  const Eigen::Index n = side * side;
  Eigen::MatrixXd sigma(n, n);
  for (Eigen::Index c2 = 0; c2 < side; ++c2) {
    for (Eigen::Index c1 = 0; c1 < side; ++c1) {
      sigma.block(c1 * side, c2 * side, side, side) =
          kernel.sigma2 * axis(c1, c2) * axis;
    }
  }
  return JointGaussianModel(Eigen::VectorXd::Zero(n), std::move(sigma),
                            op.vectorized());
}

Eigen::MatrixXd JointGaussianModel::augmented_operator() const {
  const Eigen::Index n = size();
  Eigen::MatrixXd wbar(n, 3 * n);
  wbar << Eigen::MatrixXd::Identity(n, n), op_.real(), op_.imag();
  return wbar;
}

JointMoments joint_moments(const JointGaussianModel& model) {
  const Eigen::MatrixXd wbar = model.augmented_operator();
  JointMoments out;
  out.mean = wbar.transpose() * model.mean();
  out.covariance = wbar.transpose() * model.covariance() * wbar;
  out.covariance = 0.5 * (out.covariance + out.covariance.transpose()).eval();
  return out;
}

CovarianceBlocks covariance_blocks(const JointGaussianModel& model) {
  const Eigen::MatrixXd& sigma = model.covariance();
  const Eigen::MatrixXd& wr = model.op().real();
  const Eigen::MatrixXd& wi = model.op().imag();
  CovarianceBlocks out;
  out.time_real = sigma * wr;
  out.time_imag = sigma * wi;
  out.real = wr.transpose() * out.time_real;
  out.imag = wi.transpose() * out.time_imag;
  return out;
}

namespace {

constexpr double kNegativeEigenTolerance = 1e-8;

// V sqrt(max(lambda, 0)) for a covariance that is PSD up to rounding, such as
// a posterior pinned down by noiseless data.
Eigen::MatrixXd symmetric_root(const Eigen::MatrixXd& covariance,
                               double scale) {
  const Eigen::MatrixXd sym = 0.5 * (covariance + covariance.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(sym);
  if (eig.info() != Eigen::Success) {
    throw NumericalError("sampler: eigendecomposition failed");
  }
  const Eigen::VectorXd& lambda = eig.eigenvalues();
  const double top = std::max(scale, lambda.cwiseAbs().maxCoeff());
  if (lambda.minCoeff() < -kNegativeEigenTolerance * top) {
    throw NumericalError("sampler: covariance is not positive semidefinite");
  }
  return eig.eigenvectors() *
         lambda.cwiseMax(0.0).cwiseSqrt().asDiagonal();
}

}  // namespace

HierarchicalSampler::HierarchicalSampler(Eigen::VectorXd mean,
                                         const Eigen::MatrixXd& covariance,
                                         FourierOperator op,
                                         double scale)
    : mean_(std::move(mean)), op_(std::move(op)) {
  if (mean_.size() != op_.size() || covariance.rows() != op_.size() ||
      covariance.cols() != op_.size()) {
    throw InvalidInput("sampler: dimension mismatch");
  }
  if (!(scale >= 0.0)) throw InvalidInput("sampler: scale must be >= 0");
  try {
    CholeskyFactor factor = jittered_cholesky(covariance);
    root_ = factor.lower.triangularView<Eigen::Lower>();
    jitter_ = factor.jitter;
  } catch (const NumericalError&) {
    root_ = symmetric_root(covariance, scale);
  }
}

HierarchicalSampler::HierarchicalSampler(const JointGaussianModel& model)
    : HierarchicalSampler(model.mean(), model.covariance(), model.op()) {}

FourierPairSample HierarchicalSampler::draw(std::uint64_t seed,
                                            std::uint64_t index) const {
  Rng rng(stream_seed(seed, index));
  const Eigen::VectorXd z = rng.normal_vector(size());
  FourierPairSample out;
  out.x = mean_ + root_ * z;
  out.spectrum = op_.forward(out.x);
  return out;
}

FourierPairSample sample_pair(const JointGaussianModel& model,
                              std::uint64_t seed) {
  return HierarchicalSampler(model).draw(seed, 0);
}

double empirical_quantile(Eigen::VectorXd values, double q) {
  if (values.size() == 0) throw InvalidInput("quantile of empty sample");
  if (!(q >= 0.0 && q <= 1.0)) throw InvalidInput("quantile outside [0, 1]");
  std::sort(values.begin(), values.end());
  const double position = q * static_cast<double>(values.size() - 1);
  const auto below = static_cast<Eigen::Index>(std::floor(position));
  const Eigen::Index above = std::min(below + 1, values.size() - 1);
  const double weight = position - static_cast<double>(below);
  return values[below] + weight * (values[above] - values[below]);
}

PowerSpectrumSamples power_spectrum_samples(const HierarchicalSampler& sampler,
                                            int count, std::uint64_t seed) {
  if (count < 1) throw InvalidInput("power spectrum needs count >= 1");
  const Eigen::Index n = sampler.size();
  PowerSpectrumSamples out;
  out.samples.resize(count, n);
  for (int s = 0; s < count; ++s) {
    out.samples.row(s) =
        sampler.draw(seed, static_cast<std::uint64_t>(s)).spectrum.power();
  }
  out.mean = out.samples.colwise().mean().transpose();
  out.lower.resize(n);
  out.upper.resize(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    out.lower[k] = empirical_quantile(out.samples.col(k), 0.025);
    out.upper[k] = empirical_quantile(out.samples.col(k), 0.975);
  }
  return out;
}

}  // namespace brfp
