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

// Independent reference implementations used to check the library. They
// deliberately avoid the library's operators and solvers.

#ifndef BRFP_TESTS_ORACLES_H_
#define BRFP_TESTS_ORACLES_H_

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include <Eigen/Dense>

namespace brfp::oracle {

// Unitary DFT by direct summation: X_k = sum_n x_n exp(-2 pi i n k / N) / sqrt(N).
inline std::vector<std::complex<double>> dft(const Eigen::VectorXd& x) {
  const auto n = x.size();
  std::vector<std::complex<double>> out(static_cast<std::size_t>(n));
  for (Eigen::Index k = 0; k < n; ++k) {
    std::complex<double> acc = 0.0;
    for (Eigen::Index t = 0; t < n; ++t) {
      const double angle = -2.0 * std::numbers::pi *
                           static_cast<double>((t * k) % n) /
                           static_cast<double>(n);
      acc += x[t] * std::polar(1.0, angle);
    }
    out[static_cast<std::size_t>(k)] = acc / std::sqrt(static_cast<double>(n));
  }
  return out;
}

// Complex DFT matrix F with F(n, k) = exp(-2 pi i n k / N) / sqrt(N).
inline Eigen::MatrixXcd dft_matrix(Eigen::Index n) {
  Eigen::MatrixXcd f(n, n);
  for (Eigen::Index r = 0; r < n; ++r) {
    for (Eigen::Index k = 0; k < n; ++k) {
      const double angle = -2.0 * std::numbers::pi *
                           static_cast<double>((r * k) % n) /
                           static_cast<double>(n);
      f(r, k) = std::polar(1.0 / std::sqrt(static_cast<double>(n)), angle);
    }
  }
  return f;
}

struct Conditioned {
  Eigen::VectorXd mean;
  Eigen::MatrixXd covariance;
};

// Builds the joint Gaussian of z = [x; Xr; Xi; y; Yr; Yi] with the noise
// entering as explicit extra latent variables, then conditions on the
// observed entries with a QR solve.
inline Conditioned condition_dense(const Eigen::VectorXd& mean,
                                   const Eigen::MatrixXd& sigma,
                                   const std::vector<Eigen::Index>& t_idx,
                                   const std::vector<Eigen::Index>& f_idx,
                                   double noise_t, double noise_f,
                                   const Eigen::VectorXd& y,
                                   const Eigen::VectorXd& yr,
                                   const Eigen::VectorXd& yi) {
  const Eigen::Index n = mean.size();
  const auto mt = static_cast<Eigen::Index>(t_idx.size());
  const auto mf = static_cast<Eigen::Index>(f_idx.size());
  const Eigen::Index m = mt + 2 * mf;
  const Eigen::MatrixXcd f = dft_matrix(n);

  // z = A [x; e], with e ~ N(0, Lambda) independent of x.
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(3 * n + m, n + m);
  a.block(0, 0, n, n).setIdentity();
  a.block(n, 0, n, n) = f.transpose().real();
  a.block(2 * n, 0, n, n) = f.transpose().imag();
  for (Eigen::Index q = 0; q < mt; ++q) {
    a(3 * n + q, t_idx[static_cast<std::size_t>(q)]) = 1.0;
    a(3 * n + q, n + q) = 1.0;
  }
  for (Eigen::Index q = 0; q < mf; ++q) {
    const Eigen::Index k = f_idx[static_cast<std::size_t>(q)];
    a.row(3 * n + mt + q).head(n) = f.col(k).real().transpose();
    a.row(3 * n + mt + mf + q).head(n) = f.col(k).imag().transpose();
    a(3 * n + mt + q, n + mt + q) = 1.0;
    a(3 * n + mt + mf + q, n + mt + mf + q) = 1.0;
  }
  Eigen::MatrixXd base = Eigen::MatrixXd::Zero(n + m, n + m);
  base.topLeftCorner(n, n) = sigma;
  for (Eigen::Index q = 0; q < m; ++q) {
    base(n + q, n + q) = q < mt ? noise_t : noise_f;
  }
  Eigen::VectorXd base_mean = Eigen::VectorXd::Zero(n + m);
  base_mean.head(n) = mean;

  const Eigen::MatrixXd cov = a * base * a.transpose();
  const Eigen::VectorXd mu = a * base_mean;
  Eigen::VectorXd obs(m);
  obs << y, yr, yi;

  const Eigen::MatrixXd c_ll = cov.topLeftCorner(3 * n, 3 * n);
  const Eigen::MatrixXd c_lo = cov.topRightCorner(3 * n, m);
  const Eigen::MatrixXd c_oo = cov.bottomRightCorner(m, m);
  const Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(c_oo);
  Conditioned out;
  out.mean = mu.head(3 * n) + c_lo * qr.solve(obs - mu.tail(m));
  out.covariance = c_ll - c_lo * qr.solve(c_lo.transpose());
  return out;
}

// Log density of N(y; mu, cov) through an LU determinant and solve.
inline double gaussian_log_density(const Eigen::VectorXd& y,
                                   const Eigen::VectorXd& mu,
                                   const Eigen::MatrixXd& cov) {
  const Eigen::FullPivLU<Eigen::MatrixXd> lu(cov);
  const Eigen::VectorXd r = y - mu;
  const double quad = r.dot(lu.solve(r));
  return -0.5 * (static_cast<double>(y.size()) * std::log(2.0 * std::numbers::pi) +
                 std::log(lu.determinant()) + quad);
}

inline double relative_frobenius(const Eigen::MatrixXd& got,
                                 const Eigen::MatrixXd& want) {
  const double scale = want.norm();
  return scale == 0.0 ? got.norm() : (got - want).norm() / scale;
}

}  // namespace brfp::oracle

#endif  // BRFP_TESTS_ORACLES_H_
