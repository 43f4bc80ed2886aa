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

#include <gtest/gtest.h>

#include "brfp/error.h"
#include "brfp/random.h"
#include "oracles.h"

namespace brfp {
namespace {

TEST(BuildOperatorTest, TwoPointOperator) {
  const FourierOperator op = build_operator(2);
  const double h = 1.0 / std::sqrt(2.0);
  Eigen::MatrixXd expected(2, 2);
  expected << h, h, h, -h;
  EXPECT_LT((op.real() - expected).cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_EQ(op.imag().cwiseAbs().maxCoeff(), 0.0);
}

TEST(BuildOperatorTest, FourPointImaginaryEntry) {
  EXPECT_NEAR(build_operator(4).imag()(1, 1), -0.5, 1e-15);
}

TEST(BuildOperatorTest, RejectsTinySizes) {
  EXPECT_THROW(build_operator(1), InvalidInput);
  EXPECT_THROW(build_operator(0), InvalidInput);
}

TEST(BuildOperatorTest, UnitaryForAllSizes) {
  for (Eigen::Index n = 2; n <= 256; ++n) {
    const FourierOperator op = build_operator(n);
    const Eigen::MatrixXd gram = op.real().transpose() * op.real() +
                                 op.imag().transpose() * op.imag();
    ASSERT_LT((gram - Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff(),
              1e-10)
        << "n=" << n;
  }
}

TEST(BuildOperatorTest, ColumnParity) {
  for (const Eigen::Index n : {2, 5, 8, 33}) {
    const FourierOperator op = build_operator(n);
    for (Eigen::Index k = 1; k < n; ++k) {
      EXPECT_LT((op.real().col(k) - op.real().col(n - k)).cwiseAbs().maxCoeff(),
                1e-14);
      EXPECT_LT((op.imag().col(k) + op.imag().col(n - k)).cwiseAbs().maxCoeff(),
                1e-14);
      EXPECT_EQ(op.negated_index()[static_cast<std::size_t>(k)], n - k);
    }
    EXPECT_EQ(op.negated_index()[0], 0);
  }
}

TEST(SignedFrequencyTest, FollowsStandardOrdering) {
  EXPECT_EQ(signed_frequency(0, 4), 0);
  EXPECT_EQ(signed_frequency(1, 4), 1);
  EXPECT_EQ(signed_frequency(2, 4), -2);
  EXPECT_EQ(signed_frequency(3, 4), -1);
  EXPECT_EQ(signed_frequency(2, 5), 2);
  EXPECT_EQ(signed_frequency(3, 5), -2);
}

TEST(ForwardTest, ZeroAndConstantSignals) {
  const FourierOperator op = build_operator(10);
  const SpectrumPair zero = op.forward(Eigen::VectorXd::Zero(10));
  EXPECT_EQ(zero.real.cwiseAbs().maxCoeff(), 0.0);
  EXPECT_EQ(zero.imag.cwiseAbs().maxCoeff(), 0.0);

  const double c = 1.5;
  const SpectrumPair dc = op.forward(Eigen::VectorXd::Constant(10, c));
  EXPECT_NEAR(dc.real[0], c * std::sqrt(10.0), 1e-13);
  EXPECT_LT(dc.real.tail(9).cwiseAbs().maxCoeff(), 1e-13);
  EXPECT_LT(dc.imag.cwiseAbs().maxCoeff(), 1e-13);
}

TEST(ForwardTest, MatchesDirectSummation) {
  Rng rng(3);
  const FourierOperator op = build_operator(64);
  for (int trial = 0; trial < 5; ++trial) {
    const Eigen::VectorXd x = rng.normal_vector(64);
    const SpectrumPair s = op.forward(x);
    const auto reference = oracle::dft(x);
    for (Eigen::Index k = 0; k < 64; ++k) {
      EXPECT_NEAR(s.real[k], reference[static_cast<std::size_t>(k)].real(),
                  1e-10);
      EXPECT_NEAR(s.imag[k], reference[static_cast<std::size_t>(k)].imag(),
                  1e-10);
    }
  }
}

TEST(ForwardTest, LengthMismatchThrows) {
  const FourierOperator op = build_operator(8);
  EXPECT_THROW(op.forward(Eigen::VectorXd::Zero(7)), InvalidInput);
  EXPECT_THROW(op.inverse({Eigen::VectorXd::Zero(8), Eigen::VectorXd::Zero(7)}),
               InvalidInput);
}

TEST(InverseTest, RoundTrip) {
  Rng rng(4);
  const FourierOperator op = build_operator(128);
  const Eigen::VectorXd x = rng.normal_vector(128);
  EXPECT_LT((op.inverse(op.forward(x)) - x).cwiseAbs().maxCoeff(), 1e-10);
  const Eigen::VectorXd zero =
      op.inverse({Eigen::VectorXd::Zero(128), Eigen::VectorXd::Zero(128)});
  EXPECT_EQ(zero.cwiseAbs().maxCoeff(), 0.0);
  const Eigen::VectorXd constant = Eigen::VectorXd::Constant(128, -2.0);
  EXPECT_LT((op.inverse(op.forward(constant)) - constant).cwiseAbs().maxCoeff(),
            1e-12);
}

TEST(SpectrumPairTest, PowerIsSumOfSquares) {
  SpectrumPair s{Eigen::Vector2d(3.0, 1.0), Eigen::Vector2d(4.0, 0.0)};
  EXPECT_EQ(s.power(), Eigen::Vector2d(25.0, 1.0));
}

TEST(Operator2DTest, AllOnesImageHasSingleDcEntry) {
  const FourierOperator2D op = build_operator_2d(2);
  auto [re, im] = op.forward(Eigen::MatrixXd::Ones(2, 2));
  EXPECT_NEAR(re(0, 0), 2.0, 1e-14);
  re(0, 0) = 0.0;
  EXPECT_LT(re.cwiseAbs().maxCoeff(), 1e-14);
  EXPECT_LT(im.cwiseAbs().maxCoeff(), 1e-14);
}

TEST(Operator2DTest, ZeroImageHasZeroSpectrum) {
  const auto [re, im] = build_operator_2d(4).forward(Eigen::MatrixXd::Zero(4, 4));
  EXPECT_EQ(re.cwiseAbs().maxCoeff(), 0.0);
  EXPECT_EQ(im.cwiseAbs().maxCoeff(), 0.0);
}

TEST(Operator2DTest, MatchesPerAxisTransform) {
  Rng rng(8);
  for (const Eigen::Index side : {2, 4, 8}) {
    const Eigen::MatrixXd image =
        Eigen::Map<const Eigen::MatrixXd>(rng.normal_vector(side * side).data(),
                                          side, side);
    const Eigen::MatrixXcd f = oracle::dft_matrix(side);
    const Eigen::MatrixXcd reference =
        f.transpose() * image.cast<std::complex<double>>() * f;
    const FourierOperator2D op = build_operator_2d(side);
    const SpectrumPair s = op.vectorized().forward(vectorize(image));
    EXPECT_LT((unvectorize(s.real, side) - reference.real()).cwiseAbs().maxCoeff(),
              1e-9);
    EXPECT_LT((unvectorize(s.imag, side) - reference.imag()).cwiseAbs().maxCoeff(),
              1e-9);
    const auto [re, im] = op.forward(image);
    EXPECT_LT((re - reference.real()).cwiseAbs().maxCoeff(), 1e-9);
    EXPECT_LT((im - reference.imag()).cwiseAbs().maxCoeff(), 1e-9);
  }
}

TEST(Operator2DTest, VectorizedOperatorIsUnitaryAndInvertible) {
  Rng rng(10);
  const FourierOperator2D op = build_operator_2d(6);
  const Eigen::VectorXd x = rng.normal_vector(36);
  const FourierOperator& v = op.vectorized();
  EXPECT_LT((v.inverse(v.forward(x)) - x).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Operator2DTest, SizeBoundIsEnforced) {
  EXPECT_THROW(build_operator_2d(kMax2dSide + 1), ResourceError);
  EXPECT_THROW(build_operator_2d(1), InvalidInput);
}

TEST(Operator2DTest, VectorizeIsColumnMajor) {
  Eigen::MatrixXd m(2, 2);
  m << 1, 2, 3, 4;
  EXPECT_EQ(vectorize(m), Eigen::Vector4d(1, 3, 2, 4));
  EXPECT_EQ(unvectorize(vectorize(m), 2), m);
  EXPECT_THROW(unvectorize(Eigen::VectorXd::Zero(5), 2), InvalidInput);
}

}  // namespace
}  // namespace brfp
