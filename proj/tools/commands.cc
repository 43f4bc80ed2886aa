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

#include "commands.h"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <ostream>
#include <string>
#include <system_error>
#include <utility>

#include "CLI11.hpp"
#include "brfp/baseline.h"
#include "brfp/error.h"
#include "brfp/experiments.h"
#include "brfp/fourier.h"
#include "brfp/inference.h"
#include "brfp/metrics.h"
#include "brfp/model.h"
#include "brfp/random.h"

namespace brfp::cli {

namespace {

namespace fs = std::filesystem;
using csv::field;

// Sub-streams of the run seed, one per source of randomness.
constexpr std::uint64_t kTruthStream = 0;
constexpr std::uint64_t kTemporalIndexStream = 1;
constexpr std::uint64_t kSpectralIndexStream = 2;
constexpr std::uint64_t kNoiseStream = 3;
constexpr std::uint64_t kTrainingStream = 4;

std::string flag(bool value) { return value ? "true" : "false"; }

csv::Table read_table(const fs::path& path) { return csv::Table::read(path); }

csv::Writer time_csv(const GridSpec& grid, const Eigen::VectorXd& x) {
  const TimeGrid points = grid.grid();
  csv::Writer out({"index", "time", "value"});
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    out.row({field(i), field(points[i]), field(x[i])});
  }
  return out;
}

csv::Writer spectrum_csv(const GridSpec& grid, const SpectrumPair& spectrum) {
  const Eigen::VectorXd power = spectrum.power();
  const Eigen::Index n = spectrum.size();
  csv::Writer out({"index", "freq_index", "frequency", "real", "imag", "power"});
  for (Eigen::Index k = 0; k < n; ++k) {
    out.row({field(k), field(signed_frequency(k, n)),
             field(grid.bin_frequency(k)), field(spectrum.real[k]),
             field(spectrum.imag[k]), field(power[k])});
  }
  return out;
}

csv::Writer posterior_csv(const PosteriorResult& post) {
  csv::Writer out({"block", "index", "mean", "std"});
  for (const Block block : post.blocks) {
    const Eigen::VectorXd mean = post.block_mean(block);
    const Eigen::VectorXd std = post.block_std(block);
    for (Eigen::Index i = 0; i < mean.size(); ++i) {
      out.row({field(to_string(block)), field(i), field(mean[i]),
               field(std[i])});
    }
  }
  return out;
}

csv::Writer metrics_csv(const std::vector<std::pair<std::string, double>>& rows) {
  csv::Writer out({"metric", "value"});
  for (const auto& [name, value] : rows) out.row({name, field(value)});
  return out;
}

void add_kernel_rows(csv::Writer& out, const std::string& prefix,
                     const KernelSpec& kernel) {
  out.row({prefix + "sigma2", field(kernel.sigma2)});
  out.row({prefix + "alpha", field(kernel.alpha)});
  if (kernel.family == KernelFamily::kPeriodic) {
    out.row({prefix + "beta", field(kernel.beta)});
  }
}

Outputs training_outputs(const TrainingReport& report) {
  csv::Writer summary({"key", "value"});
  summary.row({"family", field(to_string(report.final_kernel.family))});
  add_kernel_rows(summary, "initial_", report.initial_kernel);
  add_kernel_rows(summary, "final_", report.final_kernel);
  summary.row({"initial_temporal_noise", field(report.initial_temporal_noise)});
  summary.row({"final_temporal_noise", field(report.final_temporal_noise)});
  summary.row({"initial_spectral_noise", field(report.initial_spectral_noise)});
  summary.row({"final_spectral_noise", field(report.final_spectral_noise)});
  summary.row({"initial_log_likelihood", field(report.initial_log_likelihood)});
  summary.row({"final_log_likelihood", field(report.final_log_likelihood)});
  summary.row({"iterations", field(static_cast<long>(report.iterations))});
  summary.row({"best_restart", field(static_cast<long>(report.best_restart))});
  summary.row({"converged", flag(report.converged)});

  csv::Writer trace({"iteration", "log_likelihood"});
  for (std::size_t i = 0; i < report.trace.size(); ++i) {
    trace.row({field(static_cast<long>(i)), field(report.trace[i])});
  }
  return {{"training.csv", std::move(summary)},
          {"training_trace.csv", std::move(trace)}};
}

std::vector<Eigen::Index> pick_indices(const DomainSelection& selection,
                                       Eigen::Index n, std::uint64_t seed) {
  if (selection.indices) {
    std::vector<Eigen::Index> indices = *selection.indices;
    std::sort(indices.begin(), indices.end());
    return indices;
  }
  Rng rng(seed);
  return rng.choose(n, fraction_to_count(selection.fraction, n));
}

// Draws a truth pair from the configured prior and observes it as the
// observation section prescribes.
std::pair<FourierPairSample, ObservationSet> simulate(
    const ExperimentConfig& config, const JointGaussianModel& model) {
  const Eigen::Index n = model.size();
  FourierPairSample truth =
      HierarchicalSampler(model).draw(config.seed, kTruthStream);
  const auto temporal =
      pick_indices(config.observations.temporal, n,
                   stream_seed(config.seed, kTemporalIndexStream));
  const auto spectral =
      pick_indices(config.observations.spectral, n,
                   stream_seed(config.seed, kSpectralIndexStream));
  ObservationSet obs = corrupt(
      truth, temporal, spectral, config.observations.temporal.noise_variance,
      config.observations.spectral.noise_variance,
      stream_seed(config.seed, kNoiseStream));
  if (obs.empty()) throw InvalidInput("configuration observes nothing");
  // An unobserved domain has no noise; this matches reading the file back.
  if (temporal.empty()) obs.temporal.noise_variance = 0.0;
  if (spectral.empty()) obs.spectral.noise_variance = 0.0;
  return {std::move(truth), std::move(obs)};
}

void require_size(Eigen::Index got, Eigen::Index want, const std::string& what) {
  if (got != want) {
    throw InvalidInput(what + " has " + std::to_string(got) +
                       " entries; grid size is " + std::to_string(want));
  }
}

std::string grid_column(Eigen::Index c) { return "c" + std::to_string(c); }

}  // namespace

ObservationSet read_observations(const csv::Table& table,
                                 Eigen::Index latent_size) {
  const std::size_t c_domain = table.column("domain");
  const std::size_t c_index = table.column("index");
  const std::size_t c_real = table.column("value_real");
  const std::size_t c_imag = table.column("value_imag");
  const std::size_t c_noise = table.column("noise_variance");

  struct Entry {
    Eigen::Index index;
    double real;
    double imag;
    long line;
  };
  std::vector<Entry> time_rows, freq_rows;
  std::optional<double> time_noise, freq_noise;
  for (std::size_t r = 0; r < table.rows(); ++r) {
    const long line = table.line(r);
    const std::string& domain = table.cell(r, c_domain);
    const long index = table.integer(r, c_index);
    if (index < 0 || index >= latent_size) {
      throw ParseError("index " + std::to_string(index) +
                           " outside grid of size " +
                           std::to_string(latent_size),
                       line);
    }
    const double noise = table.number(r, c_noise);
    const bool is_time = domain == "time";
    if (!is_time && domain != "freq") {
      throw ParseError("domain must be 'time' or 'freq', got '" + domain + "'",
                       line);
    }
    std::optional<double>& shared = is_time ? time_noise : freq_noise;
    if (!shared) {
      shared = noise;
    } else if (*shared != noise) {
      throw ParseError("noise_variance must be uniform within the " + domain +
                           " domain",
                       line);
    }
    if (is_time) {
      if (!table.cell(r, c_imag).empty()) {
        throw ParseError("value_imag must be empty for time rows", line);
      }
      time_rows.push_back({index, table.number(r, c_real), 0.0, line});
    } else {
      freq_rows.push_back({index, table.number(r, c_real),
                           table.number(r, c_imag), line});
    }
  }

  const auto by_index = [](const Entry& a, const Entry& b) {
    return a.index < b.index;
  };
  const auto check_unique = [](const std::vector<Entry>& rows) {
    for (std::size_t i = 1; i < rows.size(); ++i) {
      if (rows[i].index == rows[i - 1].index) {
        throw ParseError("duplicate index " + std::to_string(rows[i].index),
                         std::max(rows[i].line, rows[i - 1].line));
      }
    }
  };
  std::stable_sort(time_rows.begin(), time_rows.end(), by_index);
  std::stable_sort(freq_rows.begin(), freq_rows.end(), by_index);
  check_unique(time_rows);
  check_unique(freq_rows);

  ObservationSet obs;
  std::vector<Eigen::Index> t_idx, f_idx;
  obs.temporal.values.resize(static_cast<Eigen::Index>(time_rows.size()));
  for (std::size_t i = 0; i < time_rows.size(); ++i) {
    t_idx.push_back(time_rows[i].index);
    obs.temporal.values[static_cast<Eigen::Index>(i)] = time_rows[i].real;
  }
  obs.spectral.real.resize(static_cast<Eigen::Index>(freq_rows.size()));
  obs.spectral.imag.resize(static_cast<Eigen::Index>(freq_rows.size()));
  for (std::size_t i = 0; i < freq_rows.size(); ++i) {
    f_idx.push_back(freq_rows[i].index);
    obs.spectral.real[static_cast<Eigen::Index>(i)] = freq_rows[i].real;
    obs.spectral.imag[static_cast<Eigen::Index>(i)] = freq_rows[i].imag;
  }
  obs.temporal.selection = SelectionMatrix(latent_size, std::move(t_idx));
  obs.spectral.selection = SelectionMatrix(latent_size, std::move(f_idx));
  obs.temporal.noise_variance = time_noise.value_or(0.0);
  obs.spectral.noise_variance = freq_noise.value_or(0.0);
  obs.validate(latent_size);
  if (obs.empty()) throw InvalidInput("observation file has no rows");
  return obs;
}

csv::Writer observations_csv(const ObservationSet& obs) {
  csv::Writer out(
      {"domain", "index", "value_real", "value_imag", "noise_variance"});
  const auto& t = obs.temporal;
  for (Eigen::Index q = 0; q < t.selection.size(); ++q) {
    out.row({"time", field(t.selection.indices()[q]), field(t.values[q]), "",
             field(t.noise_variance)});
  }
  const auto& f = obs.spectral;
  for (Eigen::Index q = 0; q < f.selection.size(); ++q) {
    out.row({"freq", field(f.selection.indices()[q]), field(f.real[q]),
             field(f.imag[q]), field(f.noise_variance)});
  }
  return out;
}

Eigen::VectorXd read_series(const csv::Table& table, const std::string& name) {
  if (table.has_column("index")) {
    const std::size_t c = table.column("index");
    for (std::size_t r = 0; r < table.rows(); ++r) {
      if (table.integer(r, c) != static_cast<long>(r)) {
        throw ParseError("index column must count 0, 1, 2, ...", table.line(r));
      }
    }
  }
  if (table.rows() == 0) throw InvalidInput("series has no rows");
  return table.numeric_column(name);
}

Eigen::MatrixXd read_grid(const csv::Table& table) {
  const auto cols = static_cast<Eigen::Index>(table.header().size());
  for (Eigen::Index c = 0; c < cols; ++c) {
    if (table.header()[static_cast<std::size_t>(c)] != grid_column(c)) {
      throw ParseError("grid header must be c0..c" + std::to_string(cols - 1),
                       1);
    }
  }
  const auto rows = static_cast<Eigen::Index>(table.rows());
  if (rows == 0) throw InvalidInput("grid has no rows");
  Eigen::MatrixXd grid(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    for (Eigen::Index c = 0; c < cols; ++c) {
      grid(r, c) = table.number(static_cast<std::size_t>(r),
                                static_cast<std::size_t>(c));
    }
  }
  return grid;
}

csv::Writer grid_csv(const Eigen::MatrixXd& grid) {
  std::vector<std::string> header;
  for (Eigen::Index c = 0; c < grid.cols(); ++c) header.push_back(grid_column(c));
  csv::Writer out(std::move(header));
  for (Eigen::Index r = 0; r < grid.rows(); ++r) {
    std::vector<std::string> row;
    for (Eigen::Index c = 0; c < grid.cols(); ++c) row.push_back(field(grid(r, c)));
    out.row(row);
  }
  return out;
}

Outputs cmd_sample(const ExperimentConfig& config) {
  config.validate();
  const JointGaussianModel model =
      JointGaussianModel::from_kernel(config.grid.grid(), config.kernel);
  const FourierPairSample sample =
      HierarchicalSampler(model).draw(config.seed, kTruthStream);
  return {{"time.csv", time_csv(config.grid, sample.x)},
          {"spectrum.csv", spectrum_csv(config.grid, sample.spectrum)}};
}

Outputs cmd_reconstruct(const ExperimentConfig& config,
                        const OptionalPath& observations,
                        const OptionalPath& truth) {
  config.validate();
  const Eigen::Index n = config.grid.size;
  const JointGaussianModel model =
      JointGaussianModel::from_kernel(config.grid.grid(), config.kernel);

  Outputs outputs;
  ObservationSet obs;
  std::optional<Eigen::VectorXd> truth_x;
  if (observations) {
    obs = read_observations(read_table(*observations), n);
    if (truth) {
      truth_x = read_series(read_table(*truth), "value");
      require_size(truth_x->size(), n, truth->string());
    }
  } else {
    if (truth) throw InvalidInput("--truth requires --observations");
    auto [sample, simulated] = simulate(config, model);
    obs = std::move(simulated);
    truth_x = sample.x;
    outputs.push_back({"truth_time.csv", time_csv(config.grid, sample.x)});
    outputs.push_back(
        {"truth_spectrum.csv", spectrum_csv(config.grid, sample.spectrum)});
    outputs.push_back({"observations.csv", observations_csv(obs)});
  }

  const PosteriorResult post =
      posterior(model, obs, {Block::kTime, Block::kReal, Block::kImag});
  outputs.push_back({"posterior.csv", posterior_csv(post)});
  if (truth_x) {
    const SpectrumPair spectrum = model.op().forward(*truth_x);
    std::vector<std::pair<std::string, double>> rows;
    const auto add = [&](const std::string& name, const Eigen::VectorXd& t,
                         const Eigen::VectorXd& e) {
      if (t.squaredNorm() > 0.0) rows.emplace_back(name, nmse(t, e));
    };
    add("nmse_time", *truth_x, post.block_mean(Block::kTime));
    add("nmse_real", spectrum.real, post.block_mean(Block::kReal));
    add("nmse_imag", spectrum.imag, post.block_mean(Block::kImag));
    outputs.push_back({"metrics.csv", metrics_csv(rows)});
  }
  return outputs;
}

Outputs cmd_reconstruct2d(const ExperimentConfig& config,
                          const OptionalPath& mask_path,
                          const OptionalPath& spectrum_path,
                          const OptionalPath& truth_path) {
  config.validate();
  Outputs outputs;
  Eigen::MatrixXd mask;
  ObservationSet obs;
  std::optional<Eigen::MatrixXd> truth;
  Eigen::Index side = config.image.side;

  if (mask_path) {
    if (!spectrum_path) throw InvalidInput("--mask requires --spectrum");
    mask = read_grid(read_table(*mask_path));
    if (mask.rows() != mask.cols()) {
      throw InvalidInput("mask must be square, got " +
                         std::to_string(mask.rows()) + "x" +
                         std::to_string(mask.cols()));
    }
    side = mask.rows();
    if (side > kMax2dSide) {
      throw ResourceError("image side " + std::to_string(side) +
                          " exceeds the dense limit of " +
                          std::to_string(kMax2dSide));
    }
    std::vector<Eigen::Index> expected;
    for (Eigen::Index c = 0; c < side; ++c) {
      for (Eigen::Index r = 0; r < side; ++r) {
        if (mask(r, c) != 0.0 && mask(r, c) != 1.0) {
          throw InvalidInput("mask entries must be 0 or 1");
        }
        if (mask(r, c) == 1.0) expected.push_back(r + side * c);
      }
    }
    if (expected.empty()) throw InvalidInput("mask observes no frequencies");

    const csv::Table table = read_table(*spectrum_path);
    const std::size_t c_row = table.column("row");
    const std::size_t c_col = table.column("col");
    const std::size_t c_real = table.column("value_real");
    const std::size_t c_imag = table.column("value_imag");
    const std::size_t c_noise = table.column("noise_variance");
    std::vector<std::tuple<Eigen::Index, double, double>> entries;
    std::optional<double> noise;
    for (std::size_t r = 0; r < table.rows(); ++r) {
      const long row = table.integer(r, c_row);
      const long col = table.integer(r, c_col);
      if (row < 0 || row >= side || col < 0 || col >= side) {
        throw ParseError("frequency cell outside the mask", table.line(r));
      }
      if (mask(row, col) != 1.0) {
        throw ParseError("frequency cell not covered by the mask",
                         table.line(r));
      }
      const double v = table.number(r, c_noise);
      if (noise && *noise != v) {
        throw ParseError("noise_variance must be uniform", table.line(r));
      }
      noise = v;
      entries.emplace_back(row + side * col, table.number(r, c_real),
                           table.number(r, c_imag));
    }
    std::sort(entries.begin(), entries.end());
    std::vector<Eigen::Index> indices;
    for (const auto& e : entries) indices.push_back(std::get<0>(e));
    if (indices != expected) {
      throw InvalidInput(
          "spectrum observations must cover each masked cell exactly once");
    }
    const Eigen::Index m = static_cast<Eigen::Index>(entries.size());
    obs.spectral.real.resize(m);
    obs.spectral.imag.resize(m);
    for (Eigen::Index q = 0; q < m; ++q) {
      obs.spectral.real[q] = std::get<1>(entries[static_cast<std::size_t>(q)]);
      obs.spectral.imag[q] = std::get<2>(entries[static_cast<std::size_t>(q)]);
    }
    obs.spectral.selection = SelectionMatrix(side * side, std::move(indices));
    obs.spectral.noise_variance = noise.value_or(0.0);
    obs.temporal.selection = SelectionMatrix(side * side, {});
    obs.validate(side * side);
    if (truth_path) {
      truth = read_grid(read_table(*truth_path));
      if (truth->rows() != side || truth->cols() != side) {
        throw InvalidInput("truth image must match the mask size");
      }
    }
  } else {
    if (spectrum_path || truth_path) {
      throw InvalidInput("--spectrum and --truth require --mask");
    }
    truth = ring_image(side);
    mask = interferometer_mask(side, config.image.coverage,
                               stream_seed(config.seed, kSpectralIndexStream));
  }

  const FourierOperator2D op = build_operator_2d(side);
  if (!mask_path) {
    obs = mask_observations(op, *truth, mask, config.image.noise,
                            stream_seed(config.seed, kNoiseStream));
    outputs.push_back({"truth.csv", grid_csv(*truth)});
    outputs.push_back({"mask.csv", grid_csv(mask)});
    csv::Writer spectral(
        {"row", "col", "value_real", "value_imag", "noise_variance"});
    const auto& f = obs.spectral;
    for (Eigen::Index q = 0; q < f.selection.size(); ++q) {
      const Eigen::Index p = f.selection.indices()[q];
      spectral.row({field(p % side), field(p / side), field(f.real[q]),
                    field(f.imag[q]), field(f.noise_variance)});
    }
    outputs.push_back({"spectrum_observations.csv", std::move(spectral)});
  }

  const ImageReconstruction rec =
      reconstruct_image(op, config.image.kernel, obs, truth);
  outputs.push_back({"image_mean.csv", grid_csv(rec.image_mean)});
  outputs.push_back({"image_std.csv", grid_csv(rec.image_std)});
  csv::Writer spectrum({"row", "col", "freq_row", "freq_col", "real_mean",
                        "real_std", "imag_mean", "imag_std"});
  for (Eigen::Index c = 0; c < side; ++c) {
    for (Eigen::Index r = 0; r < side; ++r) {
      spectrum.row({field(r), field(c), field(signed_frequency(r, side)),
                    field(signed_frequency(c, side)), field(rec.real_mean(r, c)),
                    field(rec.real_std(r, c)), field(rec.imag_mean(r, c)),
                    field(rec.imag_std(r, c))});
    }
  }
  outputs.push_back({"spectrum_posterior.csv", std::move(spectrum)});
  if (truth) {
    std::vector<std::pair<std::string, double>> rows;
    if (rec.nmse_image) rows.emplace_back("nmse_image", *rec.nmse_image);
    if (rec.nmse_real) rows.emplace_back("nmse_real", *rec.nmse_real);
    if (rec.nmse_imag) rows.emplace_back("nmse_imag", *rec.nmse_imag);
    rows.emplace_back("coverage", mask.mean());
    outputs.push_back({"metrics.csv", metrics_csv(rows)});
  }
  return outputs;
}

Outputs cmd_periodicity(const ExperimentConfig& config) {
  config.validate();
  PeriodicityConfig p = config.periodicity;
  p.training = config.training;
  p.power_samples = config.power_samples;
  p.seed = config.seed;
  const PeriodicityResult result = run_periodicity(p);

  const Eigen::Index n = result.grid.size;
  csv::Writer power({"index", "freq_index", "frequency", "mean", "lower",
                     "upper", "true_power"});
  for (Eigen::Index k = 0; k < n; ++k) {
    power.row({field(k), field(signed_frequency(k, n)),
               field(result.grid.bin_frequency(k)),
               field(result.power.mean[k]), field(result.power.lower[k]),
               field(result.power.upper[k]), field(result.true_power[k])});
  }
  csv::Writer ls({"frequency", "power"});
  for (Eigen::Index j = 0; j < result.lomb_scargle_power.size(); ++j) {
    ls.row({field(result.lomb_scargle_frequencies[j]),
            field(result.lomb_scargle_power[j])});
  }
  csv::Writer peaks({"rank", "index", "frequency", "power"});
  for (std::size_t i = 0; i < result.peaks.size(); ++i) {
    peaks.row({field(static_cast<long>(i)), field(result.peaks[i].bin),
               field(result.peaks[i].frequency), field(result.peaks[i].power)});
  }
  csv::Writer summary({"key", "value"});
  for (const double f0 : {0.5, 1.0}) {
    const Eigen::Index bin = result.nearest_bin(f0);
    const std::string tag = csv::format_number(f0);
    summary.row({"nearest_index_" + tag, field(bin)});
    summary.row({"local_maximum_" + tag, flag(result.is_local_maximum(bin))});
  }
  summary.row({"peak_to_median", field(result.peak_to_median)});
  summary.row({"lomb_scargle_peak_frequency",
               field(result.lomb_scargle_peak_frequency)});

  Outputs outputs;
  outputs.push_back({"truth_time.csv", time_csv(result.grid, result.truth)});
  outputs.push_back({"observations.csv", observations_csv(result.observations)});
  outputs.push_back({"power.csv", std::move(power)});
  outputs.push_back({"lomb_scargle.csv", std::move(ls)});
  outputs.push_back({"peaks.csv", std::move(peaks)});
  outputs.push_back({"summary.csv", std::move(summary)});
  for (auto& file : training_outputs(result.training)) {
    outputs.push_back(std::move(file));
  }
  return outputs;
}

Outputs cmd_train(const ExperimentConfig& config,
                  const OptionalPath& observations) {
  config.validate();
  const Eigen::Index n = config.grid.size;
  Outputs outputs;
  ObservationSet obs;
  if (observations) {
    obs = read_observations(read_table(*observations), n);
  } else {
    const JointGaussianModel model =
        JointGaussianModel::from_kernel(config.grid.grid(), config.kernel);
    obs = simulate(config, model).second;
    outputs.push_back({"observations.csv", observations_csv(obs)});
  }
  TrainingOptions options = config.training;
  options.seed = stream_seed(config.seed, kTrainingStream);
  const ModelTemplate model_template{
      config.grid.grid(), config.training_initial_kernel.value_or(config.kernel),
      std::nullopt};
  for (auto& file : training_outputs(train(model_template, obs, options))) {
    outputs.push_back(std::move(file));
  }
  return outputs;
}

Outputs cmd_metrics(const ExperimentConfig& config, const fs::path& truth_path,
                    const fs::path& estimate_path, const std::string& column) {
  config.validate();
  const csv::Table truth_table = read_table(truth_path);
  const csv::Table estimate_table = read_table(estimate_path);
  std::string name = column;
  if (name.empty()) {
    name = truth_table.has_column("value") ? "value" : "power";
  }
  const Eigen::VectorXd truth = read_series(truth_table, name);
  const Eigen::VectorXd estimate = read_series(estimate_table, name);
  if (truth.size() != estimate.size()) {
    throw InvalidInput("truth has " + std::to_string(truth.size()) +
                       " rows but estimate has " +
                       std::to_string(estimate.size()));
  }

  std::vector<std::pair<std::string, double>> rows;
  if (truth.squaredNorm() > 0.0) rows.emplace_back("nmse", nmse(truth, estimate));
  rows.emplace_back("l01", l01(truth, estimate));
  const auto is_psd = [](const Eigen::VectorXd& v) {
    return v.allFinite() && (v.array() >= 0.0).all() && v.sum() > 0.0;
  };
  if (is_psd(truth) && is_psd(estimate)) {
    rows.emplace_back("kl", kl_divergence(truth, estimate,
                                          KlOptions{config.kl_floor}));
  }
  return {{"metrics.csv", metrics_csv(rows)}};
}

void write_outputs(const Outputs& outputs, const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) {
    throw IoError("cannot create output directory " + dir.string() + ": " +
                  ec.message());
  }
  for (const auto& file : outputs) file.content.save(dir / file.name);
}

int run(int argc, const char* const* argv, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Joint Bayesian reconstruction of signals and their spectra"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path;
  std::uint64_t seed = 0;
  std::string out_dir = ".";
  app.add_option("--config", config_path, "JSON experiment config");
  CLI::Option* seed_option = app.add_option("--seed", seed, "Run seed");
  app.add_option("--out", out_dir, "Output directory");

  std::string observations, truth, mask, spectrum, estimate, column;
  auto* sample = app.add_subcommand("sample", "Draw a Fourier pair from the prior");
  auto* reconstruct = app.add_subcommand(
      "reconstruct", "Posterior over signal and spectrum from observations");
  reconstruct->add_option("--observations", observations, "Observation CSV");
  reconstruct->add_option("--truth", truth, "Ground-truth time CSV");
  auto* reconstruct2d =
      app.add_subcommand("reconstruct2d", "Image reconstruction from a mask");
  reconstruct2d->add_option("--mask", mask, "0/1 frequency mask grid CSV");
  reconstruct2d->add_option("--spectrum", spectrum, "Masked spectrum CSV");
  reconstruct2d->add_option("--truth", truth, "Ground-truth image grid CSV");
  auto* periodicity = app.add_subcommand(
      "periodicity", "Sum-of-sines periodicity detection study");
  auto* train_cmd = app.add_subcommand("train", "Maximum-likelihood training");
  train_cmd->add_option("--observations", observations, "Observation CSV");
  auto* metrics = app.add_subcommand("metrics", "Compare truth and estimate");
  metrics->add_option("--truth", truth, "Truth CSV")->required();
  metrics->add_option("--estimate", estimate, "Estimate CSV")->required();
  metrics->add_option("--column", column,
                      "Column to compare (default: value, else power)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitValidation;
  }

  const auto path_or_none = [](const std::string& p) -> OptionalPath {
    if (p.empty()) return std::nullopt;
    return fs::path(p);
  };

  try {
    ExperimentConfig config;
    if (!config_path.empty()) config = load_config(config_path);
    if (seed_option->count() > 0) config.seed = seed;

    ExperimentKind kind;
    if (sample->parsed()) kind = ExperimentKind::kSamplePrior;
    else if (reconstruct->parsed()) kind = ExperimentKind::kJointReconstruct;
    else if (reconstruct2d->parsed()) kind = ExperimentKind::kReconstruct2D;
    else if (periodicity->parsed()) kind = ExperimentKind::kPeriodicityDetect;
    else if (train_cmd->parsed()) kind = ExperimentKind::kTrain;
    else kind = ExperimentKind::kMetrics;
    if (config.kind && *config.kind != kind) {
      throw InvalidInput("config is for '" + std::string(to_string(*config.kind)) +
                         "' but the subcommand is '" +
                         std::string(to_string(kind)) + "'");
    }

    Outputs outputs;
    switch (kind) {
      case ExperimentKind::kSamplePrior:
        outputs = cmd_sample(config);
        break;
      case ExperimentKind::kJointReconstruct:
        outputs = cmd_reconstruct(config, path_or_none(observations),
                                  path_or_none(truth));
        break;
      case ExperimentKind::kReconstruct2D:
        outputs = cmd_reconstruct2d(config, path_or_none(mask),
                                    path_or_none(spectrum), path_or_none(truth));
        break;
      case ExperimentKind::kPeriodicityDetect:
        outputs = cmd_periodicity(config);
        break;
      case ExperimentKind::kTrain:
        outputs = cmd_train(config, path_or_none(observations));
        break;
      case ExperimentKind::kMetrics:
        outputs = cmd_metrics(config, truth, estimate, column);
        break;
    }
    write_outputs(outputs, out_dir);
    for (const auto& file : outputs) {
      out << (fs::path(out_dir) / file.name).string() << '\n';
    }
    return kExitOk;
  } catch (const InvalidInput& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const IoError& e) {
    err << "I/O error: " << e.what() << '\n';
    return kExitIo;
  } catch (const NumericalError& e) {
    err << "numerical error: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const std::exception& e) {
    err << "numerical error: " << e.what() << '\n';
    return kExitNumerical;
  }
}

}  // namespace brfp::cli
