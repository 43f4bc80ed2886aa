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

#include "brfp/kernels.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <string>

#include "brfp/error.h"

namespace brfp {

namespace {

constexpr double kJitterFloor = 1e-10;
constexpr double kJitterCap = 1e-4;
constexpr double kPivotFloor = 1e-14;

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return out;
}

// Returns false on a failed or numerically meaningless factorization.
bool try_factor(const Eigen::MatrixXd& sigma, double jitter, double scale,
                Eigen::MatrixXd* lower_out) {
  Eigen::MatrixXd loaded = sigma;
  loaded.diagonal().array() += jitter;
  Eigen::LLT<Eigen::MatrixXd> llt(loaded);
  if (llt.info() != Eigen::Success) return false;
  Eigen::MatrixXd l = llt.matrixL();
  const double min_pivot = l.diagonal().minCoeff();
  if (!(min_pivot * min_pivot > kPivotFloor * scale)) return false;
  *lower_out = std::move(l);
  return true;
}

}  // namespace

TimeGrid::TimeGrid(Eigen::VectorXd points) : points_(std::move(points)) {
  if (points_.size() < 2) {
    throw InvalidInput("time grid needs at least 2 points, got " +
                       std::to_string(points_.size()));
  }
  for (Eigen::Index i = 1; i < points_.size(); ++i) {
    if (!(points_[i] > points_[i - 1])) {
      throw InvalidInput("time grid points must be strictly increasing");
    }
  }
}

TimeGrid TimeGrid::linspace(double start, double end, Eigen::Index n) {
  if (n < 2) throw InvalidInput("time grid needs at least 2 points");
  return TimeGrid(Eigen::VectorXd::LinSpaced(n, start, end));
}

TimeGrid TimeGrid::regular(double start, double step, Eigen::Index n) {
  if (n < 2) throw InvalidInput("time grid needs at least 2 points");
  Eigen::VectorXd points(n);
  for (Eigen::Index i = 0; i < n; ++i) points[i] = start + step * i;
  return TimeGrid(std::move(points));
}

TimeGrid TimeGrid::index(Eigen::Index n) { return regular(0.0, 1.0, n); }

double TimeGrid::spacing() const {
  return (points_[size() - 1] - points_[0]) / static_cast<double>(size() - 1);
}

std::string_view to_string(KernelFamily family) {
  switch (family) {
    case KernelFamily::kSquaredExponential:
      return "SquaredExponential";
    case KernelFamily::kPeriodic:
      return "Periodic";
  }
  return "unknown";
}

KernelFamily parse_kernel_family(std::string_view name) {
  const std::string key = lower(name);
  if (key == "squaredexponential" || key == "se" ||
      key == "squared_exponential") {
    return KernelFamily::kSquaredExponential;
  }
  if (key == "periodic") return KernelFamily::kPeriodic;
  throw InvalidInput("unknown kernel family '" + std::string(name) + "'");
}

KernelSpec KernelSpec::squared_exponential(double sigma2, double alpha) {
  KernelSpec spec{KernelFamily::kSquaredExponential, sigma2, alpha, 1.0};
  spec.validate();
  return spec;
}

KernelSpec KernelSpec::periodic(double sigma2, double alpha, double beta) {
  KernelSpec spec{KernelFamily::kPeriodic, sigma2, alpha, beta};
  spec.validate();
  return spec;
}

void KernelSpec::validate() const {
  if (!(sigma2 >= 0.0) || !std::isfinite(sigma2)) {
    throw InvalidInput("kernel sigma2 must be finite and >= 0");
  }
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw InvalidInput("kernel alpha must be finite and > 0");
  }
  if (family == KernelFamily::kPeriodic &&
      (!(beta > 0.0) || !std::isfinite(beta))) {
    throw InvalidInput("periodic kernel beta must be finite and > 0");
  }
}

double KernelSpec::operator()(double t, double t_prime) const {
  const double d = t - t_prime;
  switch (family) {
    case KernelFamily::kSquaredExponential:
      return sigma2 * std::exp(-alpha * d * d);
    case KernelFamily::kPeriodic: {
      const double s = std::sin(beta * std::abs(d));
      return sigma2 * std::exp(-alpha * s * s);
    }
  }
  return 0.0;
}

int KernelSpec::num_parameters() const {
  return family == KernelFamily::kPeriodic ? 3 : 2;
}

Eigen::VectorXd KernelSpec::log_parameters() const {
  Eigen::VectorXd out(num_parameters());
  out[0] = std::log(sigma2);
  out[1] = std::log(alpha);
  if (family == KernelFamily::kPeriodic) out[2] = std::log(beta);
  return out;
}

KernelSpec KernelSpec::with_log_parameters(
    const Eigen::VectorXd& log_params) const {
  if (log_params.size() != num_parameters()) {
    throw InvalidInput("wrong number of kernel log-parameters");
  }
  KernelSpec out = *this;
  out.sigma2 = std::exp(log_params[0]);
  out.alpha = std::exp(log_params[1]);
  if (family == KernelFamily::kPeriodic) out.beta = std::exp(log_params[2]);
  return out;
}

Eigen::MatrixXd build_covariance(const TimeGrid& grid, const KernelSpec& spec) {
  spec.validate();
  const Eigen::Index n = grid.size();
  Eigen::MatrixXd sigma(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    sigma(j, j) = spec.sigma2;
    for (Eigen::Index i = j + 1; i < n; ++i) {
      const double value = spec(grid[i], grid[j]);
      sigma(i, j) = value;
      sigma(j, i) = value;
    }
  }
  return sigma;
}

CholeskyFactor jittered_cholesky(const Eigen::MatrixXd& sigma, double jitter) {
  if (sigma.rows() != sigma.cols()) {
    throw InvalidInput("cholesky: matrix is not square");
  }
  if (!(jitter >= 0.0)) throw InvalidInput("cholesky: jitter must be >= 0");
  const Eigen::Index n = sigma.rows();
  if (n == 0) return {Eigen::MatrixXd(0, 0), jitter};
  if (!sigma.allFinite()) {
    throw NumericalError("cholesky: matrix has non-finite entries");
  }

  const double scale = sigma.diagonal().maxCoeff();
  if (scale <= 0.0) {
    if (sigma.cwiseAbs().maxCoeff() == 0.0 && jitter == 0.0) {
      return {Eigen::MatrixXd::Zero(n, n), 0.0};
    }
    if (sigma.cwiseAbs().maxCoeff() == 0.0) {
      return {std::sqrt(jitter) * Eigen::MatrixXd::Identity(n, n), jitter};
    }
    throw NumericalError("cholesky: matrix has no positive diagonal entry");
  }

  CholeskyFactor out;
  if (try_factor(sigma, jitter, scale, &out.lower)) {
    out.jitter = jitter;
    return out;
  }
  for (double load = std::max(kJitterFloor * scale, 10.0 * jitter);
       load <= kJitterCap * scale * (1.0 + 1e-12); load *= 10.0) {
    if (try_factor(sigma, load, scale, &out.lower)) {
      out.jitter = load;
      return out;
    }
  }
  throw NumericalError(
      "cholesky: matrix is not positive definite even with jitter " +
      std::to_string(kJitterCap) + " x scale");
}

}  // namespace brfp
