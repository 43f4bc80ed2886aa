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

#include "brfp/optimizer.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "brfp/error.h"

namespace brfp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

NelderMeadResult nelder_mead(
    const std::function<double(const Eigen::VectorXd&)>& objective,
    const Eigen::VectorXd& start, const NelderMeadOptions& options) {
  const Eigen::Index dim = start.size();
  if (dim == 0) throw InvalidInput("nelder_mead: empty parameter vector");

  NelderMeadResult result;
  auto eval = [&](const Eigen::VectorXd& p) {
    ++result.evaluations;
    const double f = objective(p);
    return std::isfinite(f) ? f : kInf;
  };

  std::vector<Eigen::VectorXd> simplex(dim + 1, start);
  std::vector<double> values(dim + 1);
  for (Eigen::Index i = 0; i < dim; ++i) {
    simplex[i + 1][i] += options.initial_step;
  }
  for (Eigen::Index i = 0; i <= dim; ++i) values[i] = eval(simplex[i]);

  std::vector<std::size_t> order(dim + 1);
  auto sort_simplex = [&] {
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a,
                                                     std::size_t b) {
      return values[a] < values[b];
    });
    std::vector<Eigen::VectorXd> s(dim + 1);
    std::vector<double> v(dim + 1);
    for (std::size_t i = 0; i < order.size(); ++i) {
      s[i] = simplex[order[i]];
      v[i] = values[order[i]];
    }
    simplex = std::move(s);
    values = std::move(v);
  };

  sort_simplex();
  result.trace.push_back(values.front());

  while (result.iterations < options.max_iterations) {
    const double best = values.front();
    const double worst = values.back();
    if (std::isfinite(worst) &&
        2.0 * std::abs(worst - best) <=
            options.relative_tolerance * (std::abs(worst) + std::abs(best)) +
                1e-300) {
      result.converged = true;
      break;
    }
    ++result.iterations;

    Eigen::VectorXd centroid = Eigen::VectorXd::Zero(dim);
    for (Eigen::Index i = 0; i < dim; ++i) centroid += simplex[i];
    centroid /= static_cast<double>(dim);

    const Eigen::VectorXd reflected = centroid + (centroid - simplex.back());
    const double f_reflected = eval(reflected);

    if (f_reflected < values.front()) {
      const Eigen::VectorXd expanded =
          centroid + 2.0 * (centroid - simplex.back());
      const double f_expanded = eval(expanded);
      if (f_expanded < f_reflected) {
        simplex.back() = expanded;
        values.back() = f_expanded;
      } else {
        simplex.back() = reflected;
        values.back() = f_reflected;
      }
    } else if (f_reflected < values[dim - 1]) {
      simplex.back() = reflected;
      values.back() = f_reflected;
    } else {
      const bool outside = f_reflected < values.back();
      const Eigen::VectorXd contracted =
          outside ? Eigen::VectorXd(centroid + 0.5 * (reflected - centroid))
                  : Eigen::VectorXd(centroid +
                                    0.5 * (simplex.back() - centroid));
      const double f_contracted = eval(contracted);
      if (f_contracted < std::min(f_reflected, values.back())) {
        simplex.back() = contracted;
        values.back() = f_contracted;
      } else {
        for (Eigen::Index i = 1; i <= dim; ++i) {
          simplex[i] = simplex[0] + 0.5 * (simplex[i] - simplex[0]);
          values[i] = eval(simplex[i]);
        }
      }
    }
    sort_simplex();
    result.trace.push_back(std::min(result.trace.back(), values.front()));
  }

  result.argmin = simplex.front();
  result.value = values.front();
  return result;
}

}  // namespace brfp
