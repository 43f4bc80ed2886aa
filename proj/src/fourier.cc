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

#include "brfp/fourier.h"

#include <cmath>
#include <numbers>
#include <string>

#include "brfp/error.h"

namespace brfp {

namespace {

Eigen::MatrixXd kronecker(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  Eigen::MatrixXd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index j = 0; j < a.cols(); ++j) {
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

}  // namespace

Eigen::VectorXd SpectrumPair::power() const {
  return real.array().square() + imag.array().square();
}

int signed_frequency(Eigen::Index k, Eigen::Index n) {
  const Eigen::Index positive_bins = (n + 1) / 2;
  return static_cast<int>(k < positive_bins ? k : k - n);
}

FourierOperator::FourierOperator(Eigen::MatrixXd real, Eigen::MatrixXd imag,
                                 std::vector<Eigen::Index> negated) {
  if (real.rows() != real.cols() || imag.rows() != real.rows() ||
      imag.cols() != real.cols() ||
      static_cast<Eigen::Index>(negated.size()) != real.rows()) {
    throw InvalidInput("fourier operator: inconsistent dimensions");
  }
  data_ = std::make_shared<const Data>(
      Data{std::move(real), std::move(imag), std::move(negated)});
}

SpectrumPair FourierOperator::forward(const Eigen::VectorXd& x) const {
  if (x.size() != size()) {
    throw InvalidInput("forward: signal length " + std::to_string(x.size()) +
                       " does not match operator size " +
                       std::to_string(size()));
  }
  return {real().transpose() * x, imag().transpose() * x};
}

Eigen::VectorXd FourierOperator::inverse(const SpectrumPair& spectrum) const {
  if (spectrum.real.size() != size() || spectrum.imag.size() != size()) {
    throw InvalidInput("inverse: spectrum length does not match operator");
  }
  return real() * spectrum.real + imag() * spectrum.imag;
}

FourierOperator build_operator(Eigen::Index n) {
  if (n < 2) {
    throw InvalidInput("fourier operator needs N >= 2, got " +
                       std::to_string(n));
  }
  const double norm = 1.0 / std::sqrt(static_cast<double>(n));
  Eigen::MatrixXd wr(n, n);
  Eigen::MatrixXd wi(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = 0; i < n; ++i) {
      // Reduce n*k mod N first so large products keep full precision.
      const Eigen::Index phase = (i * j) % n;
      if ((4 * phase) % n == 0) {
        // Quarter turns are exact so real inputs keep zero imaginary parts.
        constexpr double kCos[] = {1.0, 0.0, -1.0, 0.0};
        constexpr double kSin[] = {0.0, 1.0, 0.0, -1.0};
        const Eigen::Index quarter = 4 * phase / n;
        wr(i, j) = norm * kCos[quarter];
        wi(i, j) = -norm * kSin[quarter];
        continue;
      }
      const double angle =
          2.0 * std::numbers::pi * static_cast<double>(phase) / n;
      wr(i, j) = norm * std::cos(angle);
      wi(i, j) = -norm * std::sin(angle);
    }
  }
  std::vector<Eigen::Index> negated(static_cast<std::size_t>(n));
  for (Eigen::Index k = 0; k < n; ++k) negated[k] = (n - k) % n;
  return FourierOperator(std::move(wr), std::move(wi), std::move(negated));
}

FourierOperator2D::FourierOperator2D(Eigen::Index side)
    : side_(side),
      axis_(build_operator(side)),
      op_([&] {
        const Eigen::MatrixXd& wr = axis_.real();
        const Eigen::MatrixXd& wi = axis_.imag();
        Eigen::MatrixXd real = kronecker(wr, wr) - kronecker(wi, wi);
        Eigen::MatrixXd imag = kronecker(wr, wi) + kronecker(wi, wr);
        std::vector<Eigen::Index> negated(
            static_cast<std::size_t>(side * side));
        for (Eigen::Index c = 0; c < side; ++c) {
          for (Eigen::Index r = 0; r < side; ++r) {
            negated[r + side * c] =
                (side - r) % side + side * ((side - c) % side);
          }
        }
        return FourierOperator(std::move(real), std::move(imag),
                               std::move(negated));
      }()) {}

std::pair<Eigen::MatrixXd, Eigen::MatrixXd> FourierOperator2D::forward(
    const Eigen::MatrixXd& image) const {
  if (image.rows() != side_ || image.cols() != side_) {
    throw InvalidInput("2D forward: image must be " + std::to_string(side_) +
                       "x" + std::to_string(side_));
  }
  const SpectrumPair spectrum = op_.forward(vectorize(image));
  return {unvectorize(spectrum.real, side_), unvectorize(spectrum.imag, side_)};
}

FourierOperator2D build_operator_2d(Eigen::Index side) {
  if (side < 2) {
    throw InvalidInput("2D fourier operator needs side >= 2, got " +
                       std::to_string(side));
  }
  if (side > kMax2dSide) {
    throw ResourceError("2D fourier operator side " + std::to_string(side) +
                        " exceeds the dense bound of " +
                        std::to_string(kMax2dSide));
  }
  return FourierOperator2D(side);
}

Eigen::VectorXd vectorize(const Eigen::MatrixXd& image) {
  return Eigen::Map<const Eigen::VectorXd>(image.data(), image.size());
}

Eigen::MatrixXd unvectorize(const Eigen::VectorXd& values, Eigen::Index side) {
  if (values.size() != side * side) {
    throw InvalidInput("unvectorize: length is not side^2");
  }
  return Eigen::Map<const Eigen::MatrixXd>(values.data(), side, side);
}

}  // namespace brfp
