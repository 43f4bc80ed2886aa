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

#include "brfp/observation.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "brfp/error.h"
#include "brfp/random.h"

namespace brfp {

SelectionMatrix::SelectionMatrix(Eigen::Index latent_size,
                                 std::vector<Eigen::Index> indices)
    : latent_size_(latent_size), indices_(std::move(indices)) {
  if (latent_size_ < 0) throw InvalidInput("selection: negative size");
  if (size() > latent_size_) {
    throw InvalidInput("selection: more observations than latent entries");
  }
  for (std::size_t q = 0; q < indices_.size(); ++q) {
    const Eigen::Index p = indices_[q];
    if (p < 0 || p >= latent_size_) {
      throw InvalidInput("selection: index " + std::to_string(p) +
                         " outside [0, " + std::to_string(latent_size_) + ")");
    }
    if (q > 0 && p <= indices_[q - 1]) {
      throw InvalidInput(p == indices_[q - 1]
                             ? "selection: duplicate index " + std::to_string(p)
                             : "selection: indices must be sorted");
    }
  }
}

SelectionMatrix SelectionMatrix::all(Eigen::Index latent_size) {
  std::vector<Eigen::Index> indices(static_cast<std::size_t>(latent_size));
  for (Eigen::Index i = 0; i < latent_size; ++i) indices[i] = i;
  return SelectionMatrix(latent_size, std::move(indices));
}

Eigen::VectorXd SelectionMatrix::gather(const Eigen::VectorXd& v) const {
  if (v.size() != latent_size_) {
    throw InvalidInput("selection: vector length does not match");
  }
  Eigen::VectorXd out(size());
  for (Eigen::Index q = 0; q < size(); ++q) out[q] = v[indices_[q]];
  return out;
}

Eigen::MatrixXd SelectionMatrix::gather_rows(const Eigen::MatrixXd& m) const {
  if (m.rows() != latent_size_) {
    throw InvalidInput("selection: matrix rows do not match");
  }
  Eigen::MatrixXd out(size(), m.cols());
  for (Eigen::Index q = 0; q < size(); ++q) out.row(q) = m.row(indices_[q]);
  return out;
}

Eigen::MatrixXd SelectionMatrix::dense() const {
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(latent_size_, size());
  for (Eigen::Index q = 0; q < size(); ++q) h(indices_[q], q) = 1.0;
  return h;
}

void ObservationSet::validate(Eigen::Index latent_size) const {
  if (temporal.values.size() != temporal_count()) {
    throw InvalidInput("temporal observations: " +
                       std::to_string(temporal.values.size()) +
                       " values for " + std::to_string(temporal_count()) +
                       " indices");
  }
  if (spectral.real.size() != spectral_count() ||
      spectral.imag.size() != spectral_count()) {
    throw InvalidInput(
        "spectral observations: real/imag lengths must match the indices");
  }
  if (!(temporal.noise_variance >= 0.0) ||
      !(spectral.noise_variance >= 0.0) ||
      !std::isfinite(temporal.noise_variance) ||
      !std::isfinite(spectral.noise_variance)) {
    throw InvalidInput("noise variances must be finite and >= 0");
  }
  if (!temporal.values.allFinite() || !spectral.real.allFinite() ||
      !spectral.imag.allFinite()) {
    throw InvalidInput("observations contain non-finite values");
  }
  if (latent_size > 0) {
    if (!temporal.selection.empty() &&
        temporal.selection.latent_size() != latent_size) {
      throw InvalidInput("temporal selection size " +
                         std::to_string(temporal.selection.latent_size()) +
                         " does not match model size " +
                         std::to_string(latent_size));
    }
    if (!spectral.selection.empty() &&
        spectral.selection.latent_size() != latent_size) {
      throw InvalidInput("spectral selection size " +
                         std::to_string(spectral.selection.latent_size()) +
                         " does not match model size " +
                         std::to_string(latent_size));
    }
  }
}

Eigen::MatrixXd AugmentedSystem::noise_covariance() const {
  return noise.asDiagonal();
}

AugmentedSystem assemble(const JointGaussianModel& model,
                         const ObservationSet& obs) {
  obs.validate(model.size());
  const Eigen::Index n = model.size();
  const Eigen::Index mt = obs.temporal_count();
  const Eigen::Index mf = obs.spectral_count();
  AugmentedSystem out;
  out.hw = Eigen::MatrixXd::Zero(mt + 2 * mf, n);
  out.noise.resize(mt + 2 * mf);
  out.observations.resize(mt + 2 * mf);

  const auto& t_idx = obs.temporal.selection.indices();
  for (Eigen::Index q = 0; q < mt; ++q) out.hw(q, t_idx[q]) = 1.0;
  out.noise.head(mt).setConstant(obs.temporal.noise_variance);
  out.observations.head(mt) = obs.temporal.values;

  if (mf > 0) {
    // Rows of Wr^T / Wi^T are columns of the (symmetric-by-construction but
    // not assumed) operator matrices.
    const auto& f_idx = obs.spectral.selection.indices();
    for (Eigen::Index q = 0; q < mf; ++q) {
      out.hw.row(mt + q) = model.op().real().col(f_idx[q]).transpose();
      out.hw.row(mt + mf + q) = model.op().imag().col(f_idx[q]).transpose();
    }
    out.noise.segment(mt, 2 * mf).setConstant(obs.spectral.noise_variance);
    out.observations.segment(mt, mf) = obs.spectral.real;
    out.observations.segment(mt + mf, mf) = obs.spectral.imag;
  }
  return out;
}

Eigen::VectorXd observe(const FourierOperator& op, const ObservationSet& obs,
                        const Eigen::VectorXd& x) {
  obs.validate(op.size());
  const Eigen::Index mt = obs.temporal_count();
  const Eigen::Index mf = obs.spectral_count();
  Eigen::VectorXd out(mt + 2 * mf);
  if (mt > 0) out.head(mt) = obs.temporal.selection.gather(x);
  if (mf > 0) {
    const SpectrumPair spectrum = op.forward(x);
    out.segment(mt, mf) = obs.spectral.selection.gather(spectrum.real);
    out.segment(mt + mf, mf) = obs.spectral.selection.gather(spectrum.imag);
  }
  return out;
}

ObservationSet corrupt(const FourierPairSample& truth,
                       const std::vector<Eigen::Index>& temporal_indices,
                       const std::vector<Eigen::Index>& spectral_indices,
                       double temporal_noise, double spectral_noise,
                       std::uint64_t seed) {
  const Eigen::Index n = truth.x.size();
  if (truth.spectrum.size() != n) {
    throw InvalidInput("corrupt: signal and spectrum lengths differ");
  }
  if (!(temporal_noise >= 0.0) || !(spectral_noise >= 0.0)) {
    throw InvalidInput("corrupt: noise variances must be >= 0");
  }
  ObservationSet obs;
  obs.temporal.selection = SelectionMatrix(n, temporal_indices);
  obs.spectral.selection = SelectionMatrix(n, spectral_indices);
  obs.temporal.noise_variance = temporal_noise;
  obs.spectral.noise_variance = spectral_noise;

  Rng rng(seed);
  const double st = std::sqrt(temporal_noise);
  const double sf = std::sqrt(spectral_noise);
  obs.temporal.values = obs.temporal.selection.gather(truth.x);
  for (Eigen::Index q = 0; q < obs.temporal.values.size(); ++q) {
    obs.temporal.values[q] += st * rng.normal();
  }
  obs.spectral.real = obs.spectral.selection.gather(truth.spectrum.real);
  obs.spectral.imag = obs.spectral.selection.gather(truth.spectrum.imag);
  for (Eigen::Index q = 0; q < obs.spectral.real.size(); ++q) {
    obs.spectral.real[q] += sf * rng.normal();
  }
  for (Eigen::Index q = 0; q < obs.spectral.imag.size(); ++q) {
    obs.spectral.imag[q] += sf * rng.normal();
  }
  return obs;
}

Eigen::Index fraction_to_count(double fraction, Eigen::Index n) {
  if (!(fraction >= 0.0 && fraction <= 1.0)) {
    throw InvalidInput("observation fraction must lie in [0, 1]");
  }
  if (fraction == 0.0) return 0;
  const auto count =
      static_cast<Eigen::Index>(std::floor(fraction * static_cast<double>(n)));
  return std::max<Eigen::Index>(count, 1);
}

}  // namespace brfp
