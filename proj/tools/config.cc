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

#include "config.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <initializer_list>
#include <iterator>
#include <sstream>
#include <string>

#include "json.hpp"

#include "brfp/error.h"
#include "brfp/fourier.h"

namespace brfp::cli {

namespace {

using nlohmann::json;

void expect_object(const json& node, const std::string& where) {
  if (!node.is_object()) throw InvalidInput(where + ": expected an object");
}

void reject_unknown(const json& node, const std::string& where,
                    std::initializer_list<std::string_view> known) {
  for (const auto& [key, value] : node.items()) {
    if (std::find(known.begin(), known.end(), key) == known.end()) {
      throw InvalidInput(where + ": unknown key '" + key + "'");
    }
  }
}

double get_double(const json& node, const std::string& where) {
  if (!node.is_number()) throw InvalidInput(where + ": expected a number");
  return node.get<double>();
}

long get_integer(const json& node, const std::string& where) {
  if (!node.is_number_integer()) {
    throw InvalidInput(where + ": expected an integer");
  }
  return node.get<long>();
}

bool get_bool(const json& node, const std::string& where) {
  if (!node.is_boolean()) throw InvalidInput(where + ": expected true/false");
  return node.get<bool>();
}

std::string get_string(const json& node, const std::string& where) {
  if (!node.is_string()) throw InvalidInput(where + ": expected a string");
  return node.get<std::string>();
}

template <typename T, typename Getter>
void read_if(const json& node, std::string_view key, const std::string& where,
             T& target, Getter get) {
  const auto it = node.find(key);
  if (it != node.end()) {
    target = static_cast<T>(get(*it, where + "." + std::string(key)));
  }
}

KernelSpec parse_kernel(const json& node, const std::string& where,
                        KernelSpec spec) {
  expect_object(node, where);
  reject_unknown(node, where, {"family", "sigma2", "alpha", "beta"});
  if (const auto it = node.find("family"); it != node.end()) {
    spec.family = parse_kernel_family(get_string(*it, where + ".family"));
  }
  read_if(node, "sigma2", where, spec.sigma2, get_double);
  read_if(node, "alpha", where, spec.alpha, get_double);
  read_if(node, "beta", where, spec.beta, get_double);
  return spec;
}

GridSpec parse_grid(const json& node) {
  expect_object(node, "grid");
  reject_unknown(node, "grid", {"size", "start", "step", "interval"});
  GridSpec grid;
  read_if(node, "size", "grid", grid.size, get_integer);
  read_if(node, "start", "grid", grid.start, get_double);
  read_if(node, "step", "grid", grid.step, get_double);
  if (const auto it = node.find("interval"); it != node.end()) {
    if (node.contains("step") || node.contains("start")) {
      throw InvalidInput("grid: give either interval or start/step");
    }
    if (!it->is_array() || it->size() != 2) {
      throw InvalidInput("grid.interval: expected [start, end]");
    }
    const double a = get_double((*it)[0], "grid.interval[0]");
    const double b = get_double((*it)[1], "grid.interval[1]");
    if (!(b > a)) throw InvalidInput("grid.interval: end must exceed start");
    if (grid.size < 2) throw InvalidInput("grid.size must be >= 2");
    // Half-open interval: the last point sits one step before the end.
    grid.start = a;
    grid.step = (b - a) / static_cast<double>(grid.size);
  }
  return grid;
}

DomainSelection parse_selection(const json& node, const std::string& where,
                                DomainSelection selection) {
  expect_object(node, where);
  reject_unknown(node, where, {"fraction", "indices", "noise_variance"});
  read_if(node, "fraction", where, selection.fraction, get_double);
  read_if(node, "noise_variance", where, selection.noise_variance, get_double);
  if (const auto it = node.find("indices"); it != node.end()) {
    if (node.contains("fraction")) {
      throw InvalidInput(where + ": give either fraction or indices");
    }
    if (!it->is_array()) throw InvalidInput(where + ".indices: expected array");
    std::vector<Eigen::Index> indices;
    for (const auto& entry : *it) {
      indices.push_back(get_integer(entry, where + ".indices"));
    }
    selection.indices = std::move(indices);
  }
  return selection;
}

void parse_training(const json& node, ExperimentConfig& config) {
  expect_object(node, "training");
  reject_unknown(node, "training",
                 {"restarts", "restart_decades", "max_iterations",
                  "relative_tolerance", "train_temporal_noise",
                  "train_spectral_noise", "initial_kernel"});
  TrainingOptions& t = config.training;
  read_if(node, "restarts", "training", t.restarts, get_integer);
  read_if(node, "restart_decades", "training", t.restart_decades, get_double);
  read_if(node, "max_iterations", "training", t.max_iterations, get_integer);
  read_if(node, "relative_tolerance", "training", t.relative_tolerance,
          get_double);
  read_if(node, "train_temporal_noise", "training", t.train_temporal_noise,
          get_bool);
  read_if(node, "train_spectral_noise", "training", t.train_spectral_noise,
          get_bool);
  if (const auto it = node.find("initial_kernel"); it != node.end()) {
    config.training_initial_kernel =
        parse_kernel(*it, "training.initial_kernel", config.kernel);
  }
}

void parse_periodicity(const json& node, PeriodicityConfig& p) {
  expect_object(node, "periodicity");
  reject_unknown(node, "periodicity",
                 {"grid_size", "duration", "observations", "noise",
                  "initial_kernel", "lomb_scargle_points",
                  "lomb_scargle_max_frequency"});
  read_if(node, "grid_size", "periodicity", p.grid_size, get_integer);
  read_if(node, "duration", "periodicity", p.duration, get_double);
  read_if(node, "observations", "periodicity", p.observations, get_integer);
  read_if(node, "noise", "periodicity", p.noise, get_double);
  read_if(node, "lomb_scargle_points", "periodicity", p.lomb_scargle_points,
          get_integer);
  read_if(node, "lomb_scargle_max_frequency", "periodicity",
          p.lomb_scargle_max_frequency, get_double);
  if (const auto it = node.find("initial_kernel"); it != node.end()) {
    p.initial_kernel =
        parse_kernel(*it, "periodicity.initial_kernel", p.initial_kernel);
  }
}

void parse_image(const json& node, ImageExperimentConfig& image) {
  expect_object(node, "image");
  reject_unknown(node, "image", {"side", "coverage", "noise", "kernel"});
  read_if(node, "side", "image", image.side, get_integer);
  read_if(node, "coverage", "image", image.coverage, get_double);
  read_if(node, "noise", "image", image.noise, get_double);
  if (const auto it = node.find("kernel"); it != node.end()) {
    image.kernel = parse_kernel(*it, "image.kernel", image.kernel);
  }
}

long line_of(std::string_view text, std::size_t byte) {
  byte = std::min(byte, text.size());
  return 1 + static_cast<long>(
                 std::count(text.begin(), text.begin() + byte, '\n'));
}

void check_indices(const DomainSelection& selection, Eigen::Index n,
                   const std::string& where) {
  if (!(selection.noise_variance >= 0.0)) {
    throw InvalidInput(where + ".noise_variance must be >= 0");
  }
  if (selection.indices) {
    for (const Eigen::Index i : *selection.indices) {
      if (i < 0 || i >= n) {
        throw InvalidInput(where + ".indices: " + std::to_string(i) +
                           " outside grid of size " + std::to_string(n));
      }
    }
  } else if (!(selection.fraction >= 0.0 && selection.fraction <= 1.0)) {
    throw InvalidInput(where + ".fraction must lie in [0, 1]");
  }
}

}  // namespace

std::string_view to_string(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::kSamplePrior: return "sample";
    case ExperimentKind::kJointReconstruct: return "reconstruct";
    case ExperimentKind::kPeriodicityDetect: return "periodicity";
    case ExperimentKind::kTrain: return "train";
    case ExperimentKind::kReconstruct2D: return "reconstruct2d";
    case ExperimentKind::kMetrics: return "metrics";
  }
  return "unknown";
}

ExperimentKind parse_experiment_kind(std::string_view name) {
  for (const auto kind :
       {ExperimentKind::kSamplePrior, ExperimentKind::kJointReconstruct,
        ExperimentKind::kPeriodicityDetect, ExperimentKind::kTrain,
        ExperimentKind::kReconstruct2D, ExperimentKind::kMetrics}) {
    if (name == to_string(kind)) return kind;
  }
  throw InvalidInput("unknown experiment '" + std::string(name) + "'");
}

void ExperimentConfig::validate() const {
  kernel.validate();
  if (grid.size < 2) throw InvalidInput("grid.size must be >= 2");
  if (!(grid.step > 0.0) || !std::isfinite(grid.start)) {
    throw InvalidInput("grid.step must be > 0");
  }
  check_indices(observations.temporal, grid.size, "observations.temporal");
  check_indices(observations.spectral, grid.size, "observations.spectral");
  if (training.restarts < 0) throw InvalidInput("training.restarts < 0");
  if (training.max_iterations < 1) {
    throw InvalidInput("training.max_iterations must be >= 1");
  }
  if (!(training.relative_tolerance > 0.0)) {
    throw InvalidInput("training.relative_tolerance must be > 0");
  }
  if (training_initial_kernel) training_initial_kernel->validate();
  if (power_samples < 1) throw InvalidInput("power_samples must be >= 1");
  if (kl_floor && !(*kl_floor > 0.0)) {
    throw InvalidInput("metrics.kl_floor must be > 0");
  }
  if (image.side < 2 || image.side > kMax2dSide) {
    throw ResourceError("image.side must lie in [2, " +
                        std::to_string(kMax2dSide) + "]");
  }
  image.kernel.validate();
  if (!(image.coverage > 0.0 && image.coverage <= 1.0)) {
    throw InvalidInput("image.coverage must lie in (0, 1]");
  }
  if (!(image.noise >= 0.0)) throw InvalidInput("image.noise must be >= 0");
}

ExperimentConfig parse_config(std::string_view text) {
  json root;
  try {
    root = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("config: ") + e.what(),
                     line_of(text, e.byte == 0 ? 0 : e.byte - 1));
  }
  expect_object(root, "config");
  reject_unknown(root, "config",
                 {"experiment", "kernel", "grid", "observations", "training",
                  "periodicity", "image", "metrics", "power_samples", "seed"});

  ExperimentConfig config;
  if (const auto it = root.find("experiment"); it != root.end()) {
    config.kind = parse_experiment_kind(get_string(*it, "experiment"));
  }
  if (const auto it = root.find("kernel"); it != root.end()) {
    config.kernel = parse_kernel(*it, "kernel", config.kernel);
  }
  if (const auto it = root.find("grid"); it != root.end()) {
    config.grid = parse_grid(*it);
  }
  if (const auto it = root.find("observations"); it != root.end()) {
    expect_object(*it, "observations");
    reject_unknown(*it, "observations", {"temporal", "spectral"});
    if (const auto t = it->find("temporal"); t != it->end()) {
      config.observations.temporal = parse_selection(
          *t, "observations.temporal", config.observations.temporal);
    }
    if (const auto f = it->find("spectral"); f != it->end()) {
      config.observations.spectral = parse_selection(
          *f, "observations.spectral", config.observations.spectral);
    }
  }
  if (const auto it = root.find("training"); it != root.end()) {
    parse_training(*it, config);
  }
  if (const auto it = root.find("periodicity"); it != root.end()) {
    parse_periodicity(*it, config.periodicity);
  }
  if (const auto it = root.find("image"); it != root.end()) {
    parse_image(*it, config.image);
  }
  if (const auto it = root.find("metrics"); it != root.end()) {
    expect_object(*it, "metrics");
    reject_unknown(*it, "metrics", {"kl_floor"});
    if (const auto f = it->find("kl_floor"); f != it->end()) {
      config.kl_floor = get_double(*f, "metrics.kl_floor");
    }
  }
  read_if(root, "power_samples", "config", config.power_samples, get_integer);
  if (const auto it = root.find("seed"); it != root.end()) {
    if (!it->is_number_unsigned()) {
      throw InvalidInput("seed: expected a non-negative integer");
    }
    config.seed = it->get<std::uint64_t>();
  }
  return config;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open config " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  try {
    return parse_config(buffer.str());
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what(), 0);
  } catch (const InvalidInput& e) {
    throw InvalidInput(path.string() + ": " + e.what());
  }
}

}  // namespace brfp::cli
