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

#include "brfp/inference.h"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <numbers>
#include <string>

#include "brfp/error.h"
#include "brfp/optimizer.h"
#include "brfp/random.h"

namespace brfp {

namespace {

constexpr int kMaxRefinements = 4;
constexpr double kNegativeVarianceTolerance = 1e-10;

// Solves A X = B where `factor` holds the Cholesky factor of A + jitter I.
// With jitter the solution is refined against A itself and the iteration
// stops as soon as the residual no longer shrinks.
Eigen::MatrixXd solve(const Eigen::MatrixXd& a, const CholeskyFactor& factor,
                      const Eigen::MatrixXd& b) {
  const auto l = factor.lower.triangularView<Eigen::Lower>();
  auto apply_inverse = [&](const Eigen::MatrixXd& rhs) {
    Eigen::MatrixXd out = l.solve(rhs);
    l.transpose().solveInPlace(out);
    return out;
  };
  Eigen::MatrixXd x = apply_inverse(b);
  if (factor.jitter <= 0.0) return x;

  Eigen::MatrixXd residual = b - a * x;
  double residual_norm = residual.norm();
  const double target = 1e-15 * b.norm();
  for (int it = 0; it < kMaxRefinements && residual_norm > target; ++it) {
    const Eigen::MatrixXd candidate = x + apply_inverse(residual);
    Eigen::MatrixXd next_residual = b - a * candidate;
    const double next_norm = next_residual.norm();
    if (!(next_norm < residual_norm)) break;
    x = candidate;
    residual = std::move(next_residual);
    residual_norm = next_norm;
  }
  return x;
}

Eigen::VectorXd marginal_std(const Eigen::MatrixXd& covariance, double scale) {
  const double tolerance = kNegativeVarianceTolerance * std::max(1.0, scale);
  Eigen::VectorXd out(covariance.rows());
  for (Eigen::Index i = 0; i < covariance.rows(); ++i) {
    const double v = covariance(i, i);
    if (v < -tolerance || !std::isfinite(v)) {
      throw NumericalError("posterior variance " + std::to_string(v) +
                           " at entry " + std::to_string(i) +
                           " is negative beyond roundoff");
    }
    out[i] = std::sqrt(std::max(v, 0.0));
  }
  return out;
}

void symmetrize(Eigen::MatrixXd& m) { m = 0.5 * (m + m.transpose()).eval(); }

// Columns of [I, Wr, Wi] for the requested blocks.
Eigen::MatrixXd block_operator(const JointGaussianModel& model,
                               const std::vector<Block>& blocks) {
  const Eigen::Index n = model.size();
  Eigen::MatrixXd out(n, n * static_cast<Eigen::Index>(blocks.size()));
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    auto cols = out.middleCols(static_cast<Eigen::Index>(b) * n, n);
    switch (blocks[b]) {
      case Block::kTime:
        cols.setIdentity();
        break;
      case Block::kReal:
        cols = model.op().real();
        break;
      case Block::kImag:
        cols = model.op().imag();
        break;
    }
  }
  return out;
}

void check_blocks(const std::vector<Block>& blocks) {
  if (blocks.empty()) throw InvalidInput("posterior: no blocks requested");
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    for (std::size_t j = i + 1; j < blocks.size(); ++j) {
      if (blocks[i] == blocks[j]) {
        throw InvalidInput("posterior: block requested twice");
      }
    }
  }
}

}  // namespace

std::string_view to_string(Block block) {
  switch (block) {
    case Block::kTime:
      return "time";
    case Block::kReal:
      return "real";
    case Block::kImag:
      return "imag";
  }
  return "unknown";
}

LikelihoodEvaluation log_likelihood(const JointGaussianModel& model,
                                    const ObservationSet& obs) {
  if (obs.empty()) throw InvalidInput("likelihood: no observations");
  const AugmentedSystem system = assemble(model, obs);

  LikelihoodEvaluation out;
  out.observation_mean = system.hw * model.mean();
  out.observation_covariance =
      system.hw * model.covariance() * system.hw.transpose();
  symmetrize(out.observation_covariance);
  out.observation_covariance.diagonal() += system.noise;
  out.factor = jittered_cholesky(out.observation_covariance);

  const Eigen::VectorXd residual =
      system.observations - out.observation_mean;
  const Eigen::VectorXd whitened =
      out.factor.lower.triangularView<Eigen::Lower>().solve(residual);
  const double log_det =
      2.0 * out.factor.lower.diagonal().array().log().sum();
  const auto m = static_cast<double>(residual.size());
  out.log_likelihood = -0.5 * whitened.squaredNorm() - 0.5 * log_det -
                       0.5 * m * std::log(2.0 * std::numbers::pi);
  if (!std::isfinite(out.log_likelihood)) {
    throw NumericalError("likelihood is not finite");
  }
  return out;
}

bool PosteriorResult::has(Block block) const {
  return std::find(blocks.begin(), blocks.end(), block) != blocks.end();
}

Eigen::Index PosteriorResult::offset(Block block) const {
  const auto it = std::find(blocks.begin(), blocks.end(), block);
  if (it == blocks.end()) {
    throw InvalidInput("posterior does not contain block '" +
                       std::string(to_string(block)) + "'");
  }
  return static_cast<Eigen::Index>(it - blocks.begin()) * block_size;
}

Eigen::VectorXd PosteriorResult::block_mean(Block block) const {
  return mean.segment(offset(block), block_size);
}

Eigen::MatrixXd PosteriorResult::block_covariance(Block block) const {
  const Eigen::Index o = offset(block);
  return covariance.block(o, o, block_size, block_size);
}

Eigen::VectorXd PosteriorResult::block_std(Block block) const {
  return marginal_std.segment(offset(block), block_size);
}

PosteriorResult posterior(const JointGaussianModel& model,
                          const ObservationSet& obs,
                          const std::vector<Block>& blocks) {
  check_blocks(blocks);
  if (obs.empty()) throw InvalidInput("posterior: no observations");
  const AugmentedSystem system = assemble(model, obs);
  const Eigen::MatrixXd& sigma = model.covariance();

  const Eigen::MatrixXd sigma_hw = sigma * system.hw.transpose();  // N x M
  Eigen::MatrixXd sigma_obs = system.hw * sigma_hw;
  symmetrize(sigma_obs);
  sigma_obs.diagonal() += system.noise;
  const CholeskyFactor factor = jittered_cholesky(sigma_obs);

  const Eigen::MatrixXd wsel = block_operator(model, blocks);
  const Eigen::MatrixXd cross = wsel.transpose() * sigma_hw;  // bN x M
  const Eigen::VectorXd residual =
      system.observations - system.hw * model.mean();

  PosteriorResult out;
  out.blocks = blocks;
  out.block_size = model.size();
  out.jitter = factor.jitter;
  out.mean = wsel.transpose() * model.mean() +
             cross * solve(sigma_obs, factor, residual);
  out.covariance = wsel.transpose() * sigma * wsel -
                   cross * solve(sigma_obs, factor, cross.transpose());
  symmetrize(out.covariance);
  out.marginal_std =
      marginal_std(out.covariance, sigma.diagonal().cwiseAbs().maxCoeff() *
                                       static_cast<double>(model.size()));
  return out;
}

PosteriorResult spectral_posterior_given_time(const JointGaussianModel& model,
                                              const ObservationSet& obs) {
  if (obs.spectral_count() != 0) {
    throw InvalidInput(
        "spectral posterior given time: spectral observations present");
  }
  if (obs.temporal_count() == 0) {
    throw InvalidInput("spectral posterior given time: no observations");
  }
  obs.validate(model.size());
  const SelectionMatrix& ht = obs.temporal.selection;
  const Eigen::MatrixXd& sigma = model.covariance();

  // Sigma Ht and Ht^T Sigma Ht by gathering.
  const Eigen::MatrixXd sigma_ht = ht.gather_rows(sigma).transpose();
  Eigen::MatrixXd gram = ht.gather_rows(sigma_ht);
  symmetrize(gram);
  gram.diagonal().array() += obs.temporal.noise_variance;
  const CholeskyFactor factor = jittered_cholesky(gram);

  const Eigen::VectorXd innovation =
      obs.temporal.values - ht.gather(model.mean());
  const Eigen::VectorXd time_mean =
      model.mean() + sigma_ht * solve(gram, factor, innovation);
  Eigen::MatrixXd time_cov =
      sigma - sigma_ht * solve(gram, factor, sigma_ht.transpose());
  symmetrize(time_cov);

  const Eigen::Index n = model.size();
  Eigen::MatrixXd w(n, 2 * n);
  w << model.op().real(), model.op().imag();

  PosteriorResult out;
  out.blocks = {Block::kReal, Block::kImag};
  out.block_size = n;
  out.jitter = factor.jitter;
  out.mean = w.transpose() * time_mean;
  out.covariance = w.transpose() * time_cov * w;
  symmetrize(out.covariance);
  out.marginal_std = marginal_std(
      out.covariance, sigma.diagonal().cwiseAbs().maxCoeff() * n);
  return out;
}

Eigen::MatrixXd spectral_covariance_woodbury(const JointGaussianModel& model,
                                             const ObservationSet& obs) {
  if (obs.spectral_count() != 0 || obs.temporal_count() == 0) {
    throw InvalidInput("woodbury route needs temporal observations only");
  }
  obs.validate(model.size());
  const double noise = obs.temporal.noise_variance;
  if (!(noise > 0.0)) {
    throw InvalidInput("woodbury route needs a positive noise variance");
  }
  const Eigen::Index n = model.size();
  const CholeskyFactor prior = jittered_cholesky(model.covariance());
  const auto l = prior.lower.triangularView<Eigen::Lower>();
  Eigen::MatrixXd precision = l.solve(Eigen::MatrixXd::Identity(n, n));
  precision = (precision.transpose() * precision).eval();
  for (const Eigen::Index p : obs.temporal.selection.indices()) {
    precision(p, p) += 1.0 / noise;
  }
  symmetrize(precision);
  const Eigen::LLT<Eigen::MatrixXd> llt(precision);
  if (llt.info() != Eigen::Success) {
    throw NumericalError("woodbury route: posterior precision not PD");
  }
  const Eigen::MatrixXd time_cov = llt.solve(Eigen::MatrixXd::Identity(n, n));

  Eigen::MatrixXd w(n, 2 * n);
  w << model.op().real(), model.op().imag();
  Eigen::MatrixXd out = w.transpose() * time_cov * w;
  symmetrize(out);
  return out;
}

PosteriorResult temporal_posterior_given_spectrum(
    const JointGaussianModel& model, const ObservationSet& obs) {
  if (obs.temporal_count() != 0) {
    throw InvalidInput(
        "temporal posterior given spectrum: temporal observations present");
  }
  if (obs.spectral_count() == 0) {
    throw InvalidInput("temporal posterior given spectrum: no observations");
  }
  return posterior(model, obs, {Block::kTime});
}

namespace {

struct ParameterLayout {
  int kernel = 0;
  bool temporal_noise = false;
  bool spectral_noise = false;

  int size() const {
    return kernel + (temporal_noise ? 1 : 0) + (spectral_noise ? 1 : 0);
  }
};

struct RestartOutcome {
  NelderMeadResult result;
  bool finite = false;
};

}  // namespace

TrainingReport train(const ModelTemplate& model_template,
                     const ObservationSet& obs,
                     const TrainingOptions& options) {
  const Eigen::Index n = model_template.grid.size();
  obs.validate(n);
  if (obs.augmented_size() < 2) {
    throw InvalidInput("training needs at least 2 observations");
  }
  model_template.kernel.validate();
  if (model_template.kernel.sigma2 <= 0.0) {
    throw InvalidInput("training needs an initial sigma2 > 0");
  }
  if (options.restarts < 0 || options.max_iterations < 1) {
    throw InvalidInput("training: invalid optimizer options");
  }

  ParameterLayout layout;
  layout.kernel = model_template.kernel.num_parameters();
  layout.temporal_noise =
      options.train_temporal_noise && obs.temporal_count() > 0;
  layout.spectral_noise =
      options.train_spectral_noise && obs.spectral_count() > 0;
  if ((layout.temporal_noise && obs.temporal.noise_variance <= 0.0) ||
      (layout.spectral_noise && obs.spectral.noise_variance <= 0.0)) {
    throw InvalidInput(
        "a trained noise variance needs a positive initial value");
  }

  Eigen::VectorXd start(layout.size());
  start.head(layout.kernel) = model_template.kernel.log_parameters();
  int slot = layout.kernel;
  if (layout.temporal_noise) start[slot++] = std::log(obs.temporal.noise_variance);
  if (layout.spectral_noise) start[slot++] = std::log(obs.spectral.noise_variance);

  const FourierOperator op = build_operator(n);
  const Eigen::VectorXd mean =
      model_template.mean ? *model_template.mean : Eigen::VectorXd::Zero(n);
  if (mean.size() != n) throw InvalidInput("training: prior mean length");

  auto unpack = [&](const Eigen::VectorXd& params, KernelSpec* kernel,
                    ObservationSet* trial) {
    *kernel = model_template.kernel.with_log_parameters(
        params.head(layout.kernel));
    int s = layout.kernel;
    if (layout.temporal_noise) trial->temporal.noise_variance = std::exp(params[s++]);
    if (layout.spectral_noise) trial->spectral.noise_variance = std::exp(params[s++]);
  };

  auto negative_log_likelihood = [&](const Eigen::VectorXd& params) {
    try {
      KernelSpec kernel;
      ObservationSet trial = obs;
      unpack(params, &kernel, &trial);
      const JointGaussianModel model(
          mean, build_covariance(model_template.grid, kernel), op);
      return -log_likelihood(model, trial).log_likelihood;
    } catch (const std::exception&) {
      return std::numeric_limits<double>::infinity();
    }
  };

  NelderMeadOptions nm;
  nm.max_iterations = options.max_iterations;
  nm.relative_tolerance = options.relative_tolerance;

  const int runs = options.restarts + 1;
  std::vector<Eigen::VectorXd> starts(static_cast<std::size_t>(runs), start);
  for (int r = 1; r < runs; ++r) {
    Rng rng(stream_seed(options.seed, static_cast<std::uint64_t>(r)));
    for (Eigen::Index i = 0; i < start.size(); ++i) {
      starts[r][i] += (2.0 * rng.uniform() - 1.0) * options.restart_decades *
                      std::numbers::ln10;
    }
  }

  std::vector<std::future<RestartOutcome>> pending;
  pending.reserve(starts.size());
  for (const Eigen::VectorXd& s : starts) {
    pending.push_back(std::async(std::launch::async, [&, s] {
      RestartOutcome outcome;
      outcome.result = nelder_mead(negative_log_likelihood, s, nm);
      outcome.finite = std::isfinite(outcome.result.value);
      return outcome;
    }));
  }
  std::vector<RestartOutcome> outcomes;
  outcomes.reserve(pending.size());
  for (auto& f : pending) outcomes.push_back(f.get());

  int best = -1;
  for (int r = 0; r < runs; ++r) {
    if (!outcomes[r].finite) continue;
    if (best < 0 || outcomes[r].result.value < outcomes[best].result.value) {
      best = r;
    }
  }
  if (best < 0) {
    throw TrainingError("training failed: no restart reached a finite likelihood");
  }

  const NelderMeadResult& winner = outcomes[best].result;
  TrainingReport report;
  report.initial_kernel = model_template.kernel;
  report.initial_temporal_noise = obs.temporal.noise_variance;
  report.initial_spectral_noise = obs.spectral.noise_variance;
  report.initial_log_likelihood = -negative_log_likelihood(start);
  ObservationSet final_obs = obs;
  unpack(winner.argmin, &report.final_kernel, &final_obs);
  report.final_temporal_noise = final_obs.temporal.noise_variance;
  report.final_spectral_noise = final_obs.spectral.noise_variance;
  report.final_log_likelihood = -winner.value;
  report.trace.reserve(winner.trace.size());
  for (const double v : winner.trace) report.trace.push_back(-v);
  report.iterations = winner.iterations;
  report.best_restart = best;
  report.converged = winner.converged;
  return report;
}

ObservationSet with_trained_noise(ObservationSet obs,
                                  const TrainingReport& report) {
  obs.temporal.noise_variance = report.final_temporal_noise;
  obs.spectral.noise_variance = report.final_spectral_noise;
  return obs;
}

}  // namespace brfp
