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

#ifndef BRFP_FOURIER_H_
#define BRFP_FOURIER_H_

#include <memory>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace brfp {

// Real and imaginary parts of a spectrum, X = Xr + j Xi.
struct SpectrumPair {
  Eigen::VectorXd real;
  Eigen::VectorXd imag;

  Eigen::Index size() const { return real.size(); }
  // |X_k|^2.
  Eigen::VectorXd power() const;
};

// Signed frequency of DFT bin k in {-floor(n/2), ..., ceil(n/2) - 1}.
int signed_frequency(Eigen::Index k, Eigen::Index n);

// Dense real/imaginary split of the unitary DFT, X = W^T x with
//   [Wr]_{nk} =  cos(2 pi n k / N) / sqrt(N)
//   [Wi]_{nk} = -sin(2 pi n k / N) / sqrt(N).
// Both matrices are symmetric and Wr Wr + Wi Wi = I. Copies share the
// underlying matrices.
class FourierOperator {
 public:
  // Generic constructor, also used for the vectorized 2D transform.
  // `negated` maps each frequency index to the index of its negation.
  FourierOperator(Eigen::MatrixXd real, Eigen::MatrixXd imag,
                  std::vector<Eigen::Index> negated);

  Eigen::Index size() const { return data_->real.rows(); }
  const Eigen::MatrixXd& real() const { return data_->real; }
  const Eigen::MatrixXd& imag() const { return data_->imag; }
  std::span<const Eigen::Index> negated_index() const {
    return data_->negated;
  }

  // Xr = Wr^T x, Xi = Wi^T x.
  SpectrumPair forward(const Eigen::VectorXd& x) const;
  // x = Wr Xr + Wi Xi. For a spectrum that is not Hermitian this returns the
  // real part of the inverse transform.
  Eigen::VectorXd inverse(const SpectrumPair& spectrum) const;

 private:
  struct Data {
    Eigen::MatrixXd real;
    Eigen::MatrixXd imag;
    std::vector<Eigen::Index> negated;
  };
  std::shared_ptr<const Data> data_;
};

// 1D operator of length n >= 2.
FourierOperator build_operator(Eigen::Index n);

// Largest side accepted by build_operator_2d. The vectorized operator has
// side^2 x side^2 dense entries (two 128 MiB matrices at 64).
inline constexpr Eigen::Index kMax2dSide = 64;

// Transform of side x side images vectorized column-major
// (pixel (r, c) -> r + side * c). The vectorized DFT is W^T (x) W^T, with
//   real = Wr (x) Wr - Wi (x) Wi
//   imag = Wr (x) Wi + Wi (x) Wr
// using 1/sqrt(side) per axis.
class FourierOperator2D {
 public:
  explicit FourierOperator2D(Eigen::Index side);

  Eigen::Index side() const { return side_; }
  // Operator on the vectorized image; plugs into the 1D machinery.
  const FourierOperator& vectorized() const { return op_; }
  const FourierOperator& axis() const { return axis_; }

  // Spectrum of an image, laid out as side x side matrices.
  std::pair<Eigen::MatrixXd, Eigen::MatrixXd> forward(
      const Eigen::MatrixXd& image) const;

 private:
  Eigen::Index side_;
  FourierOperator axis_;
  FourierOperator op_;
};

// Throws ResourceError above kMax2dSide.
FourierOperator2D build_operator_2d(Eigen::Index side);

Eigen::VectorXd vectorize(const Eigen::MatrixXd& image);
Eigen::MatrixXd unvectorize(const Eigen::VectorXd& values, Eigen::Index side);

}  // namespace brfp

#endif  // BRFP_FOURIER_H_
