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

#ifndef BRFP_TOOLS_COMMANDS_H_
#define BRFP_TOOLS_COMMANDS_H_

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "brfp/csv.h"
#include "brfp/observation.h"
#include "config.h"

namespace brfp::cli {

// Exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitNumerical = 3;
inline constexpr int kExitIo = 4;

struct OutputFile {
  std::string name;
  csv::Writer content;
};
using Outputs = std::vector<OutputFile>;

using OptionalPath = std::optional<std::filesystem::path>;

// Commands compute everything in memory; nothing touches disk until
// write_outputs, so a failing command leaves no partial files behind.
Outputs cmd_sample(const ExperimentConfig& config);
Outputs cmd_reconstruct(const ExperimentConfig& config,
                        const OptionalPath& observations,
                        const OptionalPath& truth);
Outputs cmd_reconstruct2d(const ExperimentConfig& config,
                          const OptionalPath& mask,
                          const OptionalPath& spectrum,
                          const OptionalPath& truth);
Outputs cmd_periodicity(const ExperimentConfig& config);
Outputs cmd_train(const ExperimentConfig& config,
                  const OptionalPath& observations);
Outputs cmd_metrics(const ExperimentConfig& config,
                    const std::filesystem::path& truth,
                    const std::filesystem::path& estimate,
                    const std::string& column);

void write_outputs(const Outputs& outputs, const std::filesystem::path& dir);

// Observation CSV: domain,index,value_real,value_imag,noise_variance.
ObservationSet read_observations(const csv::Table& table,
                                 Eigen::Index latent_size);
csv::Writer observations_csv(const ObservationSet& obs);

// Reads a named column; an optional index column must count 0, 1, ...
Eigen::VectorXd read_series(const csv::Table& table, const std::string& name);

// Square or rectangular grid with header c0..c{cols-1}.
Eigen::MatrixXd read_grid(const csv::Table& table);
csv::Writer grid_csv(const Eigen::MatrixXd& grid);

// Parses argv, runs one subcommand and maps failures to exit codes.
int run(int argc, const char* const* argv, std::ostream& out,
        std::ostream& err);

}  // namespace brfp::cli

#endif  // BRFP_TOOLS_COMMANDS_H_
