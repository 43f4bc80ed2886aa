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

#ifndef BRFP_EXPERIMENTS_H_
#define BRFP_EXPERIMENTS_H_

#include <cstdint>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "brfp/fourier.h"
#include "brfp/inference.h"
#include "brfp/kernels.h"
#include "brfp/model.h"
#include "brfp/observation.h"

namespace brfp {

// Regular grid start + i * step, i = 0..size-1. DFT bin k sits at
// k / (size * step) cycles per time unit.
struct GridSpec {
  Eigen::Index size = 512;
  double start = 0.0;
  double step = 1.0;

  TimeGrid grid() const { return TimeGrid::regular(start, step, size); }
  double bin_frequency(Eigen::Index k) const;
};

// Synthetic joint time/frequency reconstruction: sample a Fourier pair from
// the prior, observe a random fraction of both domains with white noise, and
// condition on everything.
struct JointReconstructionConfig {
  GridSpec grid;
  // alpha on the index grid; 0.001 here is 0.001 * 511^2 on [0, 1].
  KernelSpec kernel = KernelSpec::squared_exponential(1.0, 0.001);
  double temporal_fraction = 0.02;
  double spectral_fraction = 0.02;
  double temporal_noise = 0.2;
  double spectral_noise = 0.2;
  std::uint64_t seed = 0;
};

struct JointReconstructionResult {
  FourierPairSample truth;
  ObservationSet observations;
  PosteriorResult posterior;  // blocks time, real, imag
  double nmse_time = 0.0;
  double nmse_real = 0.0;
  double nmse_imag = 0.0;
};

JointReconstructionResult run_joint_reconstruction(
    const JointReconstructionConfig& config);

// 10 cos(2 pi 0.5 t) - 5 sin(2 pi t).
double sum_of_sines(double t);

// Periodicity detection from a few noisy samples of sum_of_sines. The latent
// grid covers [0, duration) so bin k sits at k / duration cycles per unit.
struct PeriodicityConfig {
  Eigen::Index grid_size = 256;
  double duration = 10.0;
  Eigen::Index observations = 52;
  double noise = 0.25;
  // sigma2 <= 0 means "use the sample variance of the observations".
  KernelSpec initial_kernel{KernelFamily::kSquaredExponential, 0.0, 1.0, 1.0};
  int power_samples = kDefaultPowerSamples;
  Eigen::Index lomb_scargle_points = 256;
  double lomb_scargle_max_frequency = 4.0 / 3.14159265358979323846;
  TrainingOptions training;
  std::uint64_t seed = 0;
};

struct SpectralPeak {
  Eigen::Index bin = 0;
  double frequency = 0.0;
  double power = 0.0;
};

struct PeriodicityResult {
  GridSpec grid;
  Eigen::VectorXd truth;
  ObservationSet observations;
  TrainingReport training;
  PosteriorResult time_posterior;
  PowerSpectrumSamples power;
  Eigen::VectorXd true_power;
  Eigen::VectorXd lomb_scargle_frequencies;
  Eigen::VectorXd lomb_scargle_power;
  // Local maxima of the mean posterior power over bins 1..N/2, strongest
  // first.
  std::vector<SpectralPeak> peaks;
  double lomb_scargle_peak_frequency = 0.0;
  // max / median of the mean posterior power over bins 1..N/2.
  double peak_to_median = 0.0;

  // DFT bin closest to `frequency` among bins 0..N/2.
  Eigen::Index nearest_bin(double frequency) const;
  bool is_local_maximum(Eigen::Index bin) const;
};

PeriodicityResult run_periodicity(const PeriodicityConfig& config);

// Bins k in [first, last] with power[k] strictly above both neighbours.
std::vector<Eigen::Index> local_maxima(const Eigen::VectorXd& power,
                                       Eigen::Index first, Eigen::Index last);

// Synthetic protoplanetary-disk style image: a Gaussian ring plus a central
// point-like source, values in [0, ~1].
Eigen::MatrixXd ring_image(Eigen::Index side);

// 0/1 mask of observed 2D frequencies induced by an antenna array. Antennas
// are dropped uniformly in a disk of radius side / 4 and every baseline
// (difference of two antenna positions, both signs, plus the zero spacing)
// marks its nearest frequency cell modulo side. Antennas are added until the
// coverage fraction reaches `coverage`. The mask is symmetric under
// frequency negation.
Eigen::MatrixXd interferometer_mask(Eigen::Index side, double coverage,
                                    std::uint64_t seed);

// Observes the 2D spectrum of `image` at the cells where mask == 1.
ObservationSet mask_observations(const FourierOperator2D& op,
                                 const Eigen::MatrixXd& image,
                                 const Eigen::MatrixXd& mask, double noise,
                                 std::uint64_t seed);

struct ImageReconstruction {
  Eigen::MatrixXd image_mean;
  Eigen::MatrixXd image_std;
  Eigen::MatrixXd real_mean;
  Eigen::MatrixXd real_std;
  Eigen::MatrixXd imag_mean;
  Eigen::MatrixXd imag_std;
  std::optional<double> nmse_image;
  std::optional<double> nmse_real;
  std::optional<double> nmse_imag;
};

// Posterior image and spectrum under the product-kernel image prior.
ImageReconstruction reconstruct_image(
    const FourierOperator2D& op, const KernelSpec& kernel,
    const ObservationSet& obs,
    const std::optional<Eigen::MatrixXd>& truth = std::nullopt);

struct ImageExperimentConfig {
  Eigen::Index side = 16;
  KernelSpec kernel = KernelSpec::squared_exponential(0.25, 0.1);
  double coverage = 0.54;
  double noise = 0.0;
  std::uint64_t seed = 0;
};

}  // namespace brfp

#endif  // BRFP_EXPERIMENTS_H_
