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

#ifndef BRFP_RANDOM_H_
#define BRFP_RANDOM_H_

#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Dense>

namespace brfp {

// SplitMix64 finalizer. Used to derive independent stream seeds.
std::uint64_t mix_seed(std::uint64_t value);

// Seed for the sub-stream `index` of a run seeded with `seed`. Sample i of a
// Monte Carlo batch always draws from stream_seed(seed, i), so results do not
// depend on how the batch is split across workers.
std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t index);

// Portable generator: mt19937_64 bits with the uniform and normal transforms
// implemented here (std::normal_distribution differs between standard
// libraries, which would break byte-identical outputs).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Uniform on [0, 1) with 53 random bits.
  double uniform();
  // Standard normal via the Box-Muller transform.
  double normal();
  Eigen::VectorXd normal_vector(Eigen::Index n);
  // Uniform integer in [0, n).
  std::uint64_t below(std::uint64_t n);

  // `count` distinct values from [0, n), sorted ascending.
  std::vector<Eigen::Index> choose(Eigen::Index n, Eigen::Index count);

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace brfp

#endif  // BRFP_RANDOM_H_
