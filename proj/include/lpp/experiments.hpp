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
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "lpp/distributions.hpp"
#include "lpp/graph.hpp"
#include "lpp/stats.hpp"

namespace lpp {

struct RunOptions {
  unsigned workers = 0;        // 0: LPP_WORKERS, else hardware concurrency
  bool override_gate = false;  // run despite a failed moment gate
  bool l1_plus = false;        // average max(w, 0), counting unreachable trials as 0
};

// LPP_WORKERS wins when set; otherwise `requested`, otherwise the core count.
unsigned resolve_workers(unsigned requested);

struct Summary {
  Vertex n = 0;
  std::string stat;
  std::size_t count = 0;
  std::size_t unreachable = 0;
  double mean = 0.0;
  double variance = 0.0;
  double ci_lo = 0.0;
  double ci_hi = 0.0;
  std::string ci_method = "normal-95";
  // Percentile bootstrap of the median (1000 resamples), where reported.
  std::optional<stats::BootstrapCI> median;
  std::vector<std::pair<double, double>> quantiles;
};

struct FitReport {
  std::string name;
  stats::LinearFit fit;
  std::optional<double> target;
};

struct Comparison {
  std::string name;
  Vertex n = 0;
  double ks = 0.0;
  std::size_t size_a = 0;
  std::size_t size_b = 0;
};

struct Check {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct ExperimentReport {
  std::string experiment;
  std::uint64_t master_seed = 0;
  nlohmann::json config;
  std::vector<Summary> summaries;
  std::vector<FitReport> fits;
  std::vector<Comparison> comparisons;
  std::vector<Check> checks;
  std::vector<std::string> notes;
  nlohmann::json extra = nlohmann::json::object();

  const Summary* find(const std::string& stat, Vertex n) const;
  const FitReport* find_fit(const std::string& name) const;
  const Check* find_check(const std::string& name) const;
};

std::uint64_t trial_seed(std::uint64_t master, std::uint64_t trial_index);

ExperimentReport run_slln(const WeightDistribution& dist, const PModel& p_model,
                          const std::vector<Vertex>& n_grid, std::size_t trials,
                          std::uint64_t seed, const RunOptions& opts = {});

struct CltParams {
  Vertex n = 4000;
  std::size_t trials = 300;
  std::optional<double> c;        // nullopt: midpoint of the basic c-range on a pilot window
  std::optional<Vertex> horizon;  // nullopt: n / 20
  std::vector<double> t_grid{0.25, 0.5, 0.75, 1.0};
};

ExperimentReport run_clt_shape(const WeightDistribution& dist, const PModel& p_model,
                               const CltParams& params, std::uint64_t seed,
                               const RunOptions& opts = {});

ExperimentReport run_scaling(const WeightDistribution& dist, const PModel& p_model,
                             const std::vector<Vertex>& n_grid, std::size_t trials,
                             std::uint64_t seed, const RunOptions& opts = {});

// reference_count == 0 uses `trials` continuum instances.
ExperimentReport run_compare_continuum(double s, double p, const std::vector<Vertex>& n_grid,
                                       std::size_t trials, std::size_t k, std::uint64_t seed,
                                       const RunOptions& opts = {},
                                       std::size_t reference_count = 0);

// Continuum reference sample {w^k} shared by every comparison run with the
// same master seed.
std::vector<double> continuum_reference(double s, std::size_t k, std::size_t count,
                                        std::uint64_t master_seed, unsigned workers);

}  // namespace lpp
