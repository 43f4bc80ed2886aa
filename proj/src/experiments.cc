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

#include "brfp/experiments.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "brfp/baseline.h"
#include "brfp/error.h"
#include "brfp/metrics.h"
#include "brfp/random.h"

namespace brfp {

namespace {

// Sub-stream assignment for the synthetic pipelines.
enum Stream : std::uint64_t {
  kTruthStream = 0,
  kTemporalIndexStream = 1,
  kSpectralIndexStream = 2,
  kNoiseStream = 3,
  kTrainingStream = 4,
  kPowerStream = 5,
};

double median(Eigen::VectorXd values) {
  return empirical_quantile(std::move(values), 0.5);
}

}  // namespace

double GridSpec::bin_frequency(Eigen::Index k) const {
  return signed_frequency(k, size) / (static_cast<double>(size) * step);
}

JointReconstructionResult run_joint_reconstruction(
    const JointReconstructionConfig& config) {
  const TimeGrid grid = config.grid.grid();
  const Eigen::Index n = grid.size();
  const JointGaussianModel model =
      JointGaussianModel::from_kernel(grid, config.kernel);

  JointReconstructionResult out;
  out.truth = HierarchicalSampler(model).draw(config.seed, kTruthStream);

  Rng temporal_rng(stream_seed(config.seed, kTemporalIndexStream));
  Rng spectral_rng(stream_seed(config.seed, kSpectralIndexStream));
  const auto temporal_indices = temporal_rng.choose(
      n, fraction_to_count(config.temporal_fraction, n));
  const auto spectral_indices = spectral_rng.choose(
      n, fraction_to_count(config.spectral_fraction, n));
  out.observations = corrupt(out.truth, temporal_indices, spectral_indices,
                             config.temporal_noise, config.spectral_noise,
                             stream_seed(config.seed, kNoiseStream));

  out.posterior = posterior(model, out.observations,
                            {Block::kTime, Block::kReal, Block::kImag});
  out.nmse_time = nmse(out.truth.x, out.posterior.block_mean(Block::kTime));
  out.nmse_real =
      nmse(out.truth.spectrum.real, out.posterior.block_mean(Block::kReal));
  out.nmse_imag =
      nmse(out.truth.spectrum.imag, out.posterior.block_mean(Block::kImag));
  return out;
}

double sum_of_sines(double t) {
  return 10.0 * std::cos(2.0 * std::numbers::pi * 0.5 * t) -
         5.0 * std::sin(2.0 * std::numbers::pi * t);
}

Eigen::Index PeriodicityResult::nearest_bin(double frequency) const {
  const double resolution = 1.0 / (static_cast<double>(grid.size) * grid.step);
  const auto bin = static_cast<Eigen::Index>(std::lround(frequency / resolution));
  return std::clamp<Eigen::Index>(bin, 0, grid.size / 2);
}

bool PeriodicityResult::is_local_maximum(Eigen::Index bin) const {
  if (bin < 1 || bin + 1 >= power.mean.size()) return false;
  return power.mean[bin] > power.mean[bin - 1] &&
         power.mean[bin] > power.mean[bin + 1];
}

std::vector<Eigen::Index> local_maxima(const Eigen::VectorXd& power,
                                       Eigen::Index first, Eigen::Index last) {
  std::vector<Eigen::Index> out;
  first = std::max<Eigen::Index>(first, 1);
  last = std::min<Eigen::Index>(last, power.size() - 2);
  for (Eigen::Index k = first; k <= last; ++k) {
    if (power[k] > power[k - 1] && power[k] > power[k + 1]) out.push_back(k);
  }
  return out;
}

PeriodicityResult run_periodicity(const PeriodicityConfig& config) {
  if (config.grid_size < 4) throw InvalidInput("periodicity: grid too small");
  if (!(config.duration > 0.0)) {
    throw InvalidInput("periodicity: duration must be > 0");
  }
  if (config.observations < 4 || config.observations > config.grid_size) {
    throw InvalidInput("periodicity: need 4 <= observations <= grid size");
  }
  if (!(config.noise >= 0.0)) throw InvalidInput("periodicity: noise < 0");

  PeriodicityResult out;
  out.grid = GridSpec{config.grid_size, 0.0,
                      config.duration / static_cast<double>(config.grid_size)};
  const TimeGrid grid = out.grid.grid();
  const Eigen::Index n = grid.size();
  out.truth.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) out.truth[i] = sum_of_sines(grid[i]);

  Rng index_rng(stream_seed(config.seed, kTemporalIndexStream));
  const auto indices = index_rng.choose(n, config.observations);
  Rng noise_rng(stream_seed(config.seed, kNoiseStream));
  out.observations.temporal.selection = SelectionMatrix(n, indices);
  out.observations.temporal.noise_variance = config.noise;
  out.observations.temporal.values =
      out.observations.temporal.selection.gather(out.truth);
  for (Eigen::Index q = 0; q < out.observations.temporal.values.size(); ++q) {
    out.observations.temporal.values[q] +=
        std::sqrt(config.noise) * noise_rng.normal();
  }
  out.observations.spectral.selection = SelectionMatrix(n, {});

  KernelSpec initial = config.initial_kernel;
  if (initial.sigma2 <= 0.0) {
    const Eigen::VectorXd& y = out.observations.temporal.values;
    const double variance = (y.array() - y.mean()).square().sum() /
                            static_cast<double>(y.size() - 1);
    initial.sigma2 = variance > 0.0 ? variance : 1.0;
  }
  TrainingOptions training = config.training;
  training.seed = stream_seed(config.seed, kTrainingStream);
  out.training =
      train(ModelTemplate{grid, initial, std::nullopt}, out.observations,
            training);

  const JointGaussianModel model =
      JointGaussianModel::from_kernel(grid, out.training.final_kernel);
  out.time_posterior = posterior(model, out.observations, {Block::kTime});
  const HierarchicalSampler sampler(
      out.time_posterior.mean, out.time_posterior.covariance, model.op(),
      out.training.final_kernel.sigma2);
  out.power = power_spectrum_samples(sampler, config.power_samples,
                                     stream_seed(config.seed, kPowerStream));
  out.true_power = model.op().forward(out.truth).power();

  IrregularSamples samples;
  samples.times = out.observations.temporal.selection.gather(grid.points());
  samples.values = out.observations.temporal.values;
  out.lomb_scargle_frequencies = lomb_scargle_grid(
      config.lomb_scargle_max_frequency, config.lomb_scargle_points);
  out.lomb_scargle_power =
      lomb_scargle(samples, out.lomb_scargle_frequencies);
  Eigen::Index ls_best = 0;
  out.lomb_scargle_power.maxCoeff(&ls_best);
  out.lomb_scargle_peak_frequency = out.lomb_scargle_frequencies[ls_best];

  const Eigen::Index half = n / 2;
  for (const Eigen::Index k : local_maxima(out.power.mean, 1, half)) {
    out.peaks.push_back({k, out.grid.bin_frequency(k), out.power.mean[k]});
  }
  std::stable_sort(out.peaks.begin(), out.peaks.end(),
                   [](const SpectralPeak& a, const SpectralPeak& b) {
                     return a.power > b.power;
                   });
  const Eigen::VectorXd positive = out.power.mean.segment(1, half);
  const double mid = median(positive);
  out.peak_to_median = mid > 0.0
                           ? positive.maxCoeff() / mid
                           : std::numeric_limits<double>::infinity();
  return out;
}

Eigen::MatrixXd ring_image(Eigen::Index side) {
  if (side < 2) throw InvalidInput("ring image: side must be >= 2");
  const double center = 0.5 * static_cast<double>(side - 1);
  const double radius = 0.25 * static_cast<double>(side);
  const double width = 0.1 * static_cast<double>(side);
  const double core = 0.06 * static_cast<double>(side);
  Eigen::MatrixXd image(side, side);
  for (Eigen::Index c = 0; c < side; ++c) {
    for (Eigen::Index r = 0; r < side; ++r) {
      const double dr = static_cast<double>(r) - center;
      const double dc = static_cast<double>(c) - center;
      const double rho = std::hypot(dr, dc);
      image(r, c) =
          std::exp(-0.5 * std::pow((rho - radius) / width, 2)) +
          0.6 * std::exp(-0.5 * (rho / core) * (rho / core));
    }
  }
  return image;
}

Eigen::MatrixXd interferometer_mask(Eigen::Index side, double coverage,
                                    std::uint64_t seed) {
  if (side < 2) throw InvalidInput("mask: side must be >= 2");
  if (!(coverage > 0.0 && coverage <= 1.0)) {
    throw InvalidInput("mask: coverage must lie in (0, 1]");
  }
  Eigen::MatrixXd mask = Eigen::MatrixXd::Zero(side, side);
  mask(0, 0) = 1.0;
  const auto target = static_cast<Eigen::Index>(
      std::ceil(coverage * static_cast<double>(side * side)));
  Eigen::Index covered = 1;
  auto mark = [&](double du, double dv) {
    const auto wrap = [side](double d) {
      const long cell = std::lround(d);
      return static_cast<Eigen::Index>(((cell % side) + side) % side);
    };
    const Eigen::Index r = wrap(dv);
    const Eigen::Index c = wrap(du);
    if (mask(r, c) == 0.0) {
      mask(r, c) = 1.0;
      ++covered;
    }
  };

  Rng rng(seed);
  const double radius = 0.25 * static_cast<double>(side);
  std::vector<std::pair<double, double>> antennas;
  constexpr int kMaxAntennas = 10000;
  while (covered < target) {
    if (static_cast<int>(antennas.size()) >= kMaxAntennas) {
      throw InvalidInput("mask: coverage " + std::to_string(coverage) +
                         " is not reachable with this array");
    }
    const double rho = radius * std::sqrt(rng.uniform());
    const double angle = 2.0 * std::numbers::pi * rng.uniform();
    const std::pair<double, double> antenna{rho * std::cos(angle),
                                            rho * std::sin(angle)};
    for (const auto& other : antennas) {
      const double du = antenna.first - other.first;
      const double dv = antenna.second - other.second;
      mark(du, dv);
      mark(-du, -dv);
    }
    antennas.push_back(antenna);
  }
  return mask;
}

ObservationSet mask_observations(const FourierOperator2D& op,
                                 const Eigen::MatrixXd& image,
                                 const Eigen::MatrixXd& mask, double noise,
                                 std::uint64_t seed) {
  const Eigen::Index side = op.side();
  if (mask.rows() != side || mask.cols() != side) {
    throw InvalidInput("mask must be " + std::to_string(side) + "x" +
                       std::to_string(side));
  }
  std::vector<Eigen::Index> indices;
  for (Eigen::Index c = 0; c < side; ++c) {
    for (Eigen::Index r = 0; r < side; ++r) {
      if (mask(r, c) != 0.0 && mask(r, c) != 1.0) {
        throw InvalidInput("mask entries must be 0 or 1");
      }
      if (mask(r, c) == 1.0) indices.push_back(r + side * c);
    }
  }
  if (indices.empty()) throw InvalidInput("mask observes no frequencies");
  FourierPairSample truth;
  truth.x = vectorize(image);
  truth.spectrum = op.vectorized().forward(truth.x);
  return corrupt(truth, {}, indices, 0.0, noise, seed);
}

ImageReconstruction reconstruct_image(
    const FourierOperator2D& op, const KernelSpec& kernel,
    const ObservationSet& obs, const std::optional<Eigen::MatrixXd>& truth) {
  const Eigen::Index side = op.side();
  const JointGaussianModel model = JointGaussianModel::image(op, kernel);
  const PosteriorResult post =
      posterior(model, obs, {Block::kTime, Block::kReal, Block::kImag});

  ImageReconstruction out;
  out.image_mean = unvectorize(post.block_mean(Block::kTime), side);
  out.image_std = unvectorize(post.block_std(Block::kTime), side);
  out.real_mean = unvectorize(post.block_mean(Block::kReal), side);
  out.real_std = unvectorize(post.block_std(Block::kReal), side);
  out.imag_mean = unvectorize(post.block_mean(Block::kImag), side);
  out.imag_std = unvectorize(post.block_std(Block::kImag), side);
  if (truth) {
    const auto [true_real, true_imag] = op.forward(*truth);
    out.nmse_image = nmse(vectorize(*truth), vectorize(out.image_mean));
    if (true_real.squaredNorm() > 0.0) {
      out.nmse_real = nmse(vectorize(true_real), vectorize(out.real_mean));
    }
    if (true_imag.squaredNorm() > 0.0) {
      out.nmse_imag = nmse(vectorize(true_imag), vectorize(out.imag_mean));
    }
  }
  return out;
}

}  // namespace brfp
