// Copyright 2026 The LPP Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace lpp {

struct Interval {
  double left = 0.0;
  double right = 0.0;
};

// Touching endpoints are compatible.
inline bool compatible(const Interval& x, const Interval& y) {
  return x.right <= y.left || y.right <= x.left;
}

struct ContinuumInstance {
  double s = 1.0;
  std::uint64_t seed = 0;
  std::vector<double> M;   // M[0] is M_1
  std::vector<Interval> Y;

  std::size_t k_max() const { return M.size(); }
};

ContinuumInstance generate_continuum(double s, std::size_t k_max, std::uint64_t seed);

// Fixture constructors: M_k = (W_1 + ... + W_k)^{-1/s}; intervals from (U_i, V_i).
ContinuumInstance continuum_from_exponentials(double s, std::span<const double> W,
                                              std::span<const std::pair<double, double>> UV);
ContinuumInstance continuum_from_parts(double s, std::vector<double> M, std::vector<Interval> Y);

double wk(const ContinuumInstance& inst, std::size_t k);
double wk_bruteforce(const ContinuumInstance& inst, std::size_t k);

std::size_t independence_number(std::span<const Interval> intervals);
inline std::size_t independence_number(const ContinuumInstance& inst, std::size_t i) {
  return independence_number(std::span<const Interval>(inst.Y.data(), i));
}

struct TailBound {
  // sum_{i=k+1}^{i_max} Lambda_i (M_i - M_{i+1}), Lambda_i bounded from the checkpoints
  double partial = 0.0;
  // Lambda_{i_max+1} M_{i_max+1}
  double closing = 0.0;
  std::size_t checkpoints = 0;
  double total() const { return partial + closing; }
};

// exact = true evaluates Lambda_i at every i instead of at checkpoints.
TailBound tail_bound_Uk(const ContinuumInstance& inst, std::size_t k, std::size_t i_max,
                        bool exact = false);

}  // namespace lpp
