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
#include <optional>
#include <vector>

#include "lpp/distributions.hpp"
#include "lpp/graph.hpp"

namespace lpp {

struct Cycle {
  Vertex length = 0;
  double weight = 0.0;
};

struct RenewalAnalysis {
  double c = 0.0;
  Vertex horizon = 0;
  Vertex n = 0;
  std::vector<Vertex> tau;
  std::vector<Vertex> rho;
  std::vector<Vertex> gamma;
  std::vector<Cycle> cycles;

  // Number of candidate positions, i.e. |[H, n-H]|.
  Vertex candidate_span() const { return n >= 2 * horizon ? n - 2 * horizon + 1 : 0; }
};

std::vector<Vertex> strongly_connected_points(const GraphWindow& w);

RenewalAnalysis detect_renewals(const GraphWindow& w, double c, Vertex horizon);

// Each condition evaluated independently at every candidate x in [H, n-H].
struct ConditionFlags {
  Vertex first = 0;
  std::vector<std::uint8_t> forward;   // w_{x,x+l} >= c l, 1 <= l <= H
  std::vector<std::uint8_t> backward;  // w_{x-l,x} >= c l, 1 <= l <= H
  std::vector<std::uint8_t> crossing;  // v_{x-j,x+l} < c (j+l), 1 <= j,l <= H
};
ConditionFlags renewal_conditions(const GraphWindow& w, double c, Vertex horizon);

struct DecompositionWitness {
  Vertex a = 0;
  Vertex x = 0;
  Vertex b = 0;
  std::optional<double> whole;
  std::optional<double> split;
};

struct DecompositionCheck {
  bool ok = true;
  std::uint64_t checked = 0;
  std::vector<DecompositionWitness> counterexamples;  // at most 16 kept
};

DecompositionCheck check_decomposition(const GraphWindow& w, const RenewalAnalysis& analysis);

enum class CRangeMode { kBasic, kThirdMoment };

struct CRange {
  double low = 0.0;
  double high = 0.0;
  double gamma_hat = 1.0;
  CRangeMode mode = CRangeMode::kBasic;
  // Third-moment mode: bootstrap interval of the upper bound.
  double high_ci_lo = 0.0;
  double high_ci_hi = 0.0;
  std::size_t intervals = 0;
  bool empty() const { return !(low < high); }
  double midpoint() const { return 0.5 * (low + high); }
};

CRange c_range(const GraphWindow& w, CRangeMode mode = CRangeMode::kBasic,
               std::uint64_t bootstrap_seed = 0);
// From the law alone, assuming strongly connected density gamma.
CRange c_range(const DistStats& stats, double gamma = 1.0);

struct CycleEstimates {
  double lambda_hat = 0.0;
  double C_cycle = 0.0;
  double sigma2_hat = 0.0;
  std::size_t cycles = 0;
};

CycleEstimates cycle_estimators(const RenewalAnalysis& analysis, double C_hat);
// Uses C_cycle as C_hat.
CycleEstimates cycle_estimators(const RenewalAnalysis& analysis);

double renewal_density(const RenewalAnalysis& analysis);

struct MuNuDiagnostics {
  std::vector<Vertex> nu_samples;      // uncensored gaps
  std::size_t nu_censored = 0;         // no silver point within H
  std::vector<Vertex> mu_samples_finite;
  std::size_t mu_infinite = 0;
  double mu_infinite_fraction = 0.0;
  // OLS of log P[nu > k] against k.
  double nu_log_survival_slope = 0.0;
  double nu_log_survival_stderr = 0.0;
  std::size_t nu_survival_points = 0;
};

MuNuDiagnostics mu_nu_diagnostics(const GraphWindow& w, double c, Vertex horizon);

}  // namespace lpp
