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

#ifndef BRFP_TOOLS_CONFIG_H_
#define BRFP_TOOLS_CONFIG_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string_view>
#include <vector>

#include "brfp/experiments.h"
#include "brfp/inference.h"
#include "brfp/kernels.h"

namespace brfp::cli {

enum class ExperimentKind {
  kSamplePrior,
  kJointReconstruct,
  kPeriodicityDetect,
  kTrain,
  kReconstruct2D,
  kMetrics,
};

std::string_view to_string(ExperimentKind kind);
ExperimentKind parse_experiment_kind(std::string_view name);

// Either a fraction of the grid drawn at random or an explicit index list.
struct DomainSelection {
  double fraction = 0.02;
  std::optional<std::vector<Eigen::Index>> indices;
  double noise_variance = 0.2;
};

struct ObservationConfig {
  DomainSelection temporal;
  DomainSelection spectral;
};

struct ExperimentConfig {
  // Set when the file names an experiment; must agree with the subcommand.
  std::optional<ExperimentKind> kind;
  KernelSpec kernel = KernelSpec::squared_exponential(1.0, 0.001);
  GridSpec grid;
  ObservationConfig observations;
  TrainingOptions training;
  std::optional<KernelSpec> training_initial_kernel;
  PeriodicityConfig periodicity;
  ImageExperimentConfig image;
  int power_samples = kDefaultPowerSamples;
  std::optional<double> kl_floor;
  std::uint64_t seed = 0;

  // Throws InvalidInput when sections disagree or values are out of range.
  void validate() const;
};

// Parses the JSON config text. Unknown keys are rejected.
ExperimentConfig parse_config(std::string_view text);
ExperimentConfig load_config(const std::filesystem::path& path);

}  // namespace brfp::cli

#endif  // BRFP_TOOLS_CONFIG_H_
