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
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lpp/distributions.hpp"
#include "lpp/kernels.hpp"

namespace lpp {

using Vertex = std::int64_t;

// Edge presence law: a constant p, or p_len by edge length.
class PModel {
 public:
  static PModel constant(double p);
  // Lengths beyond the end of the table reuse its last entry.
  static PModel per_length(std::vector<double> p);

  bool is_constant() const { return per_length_.empty(); }
  double p() const { return p_; }
  const std::vector<double>& table() const { return per_length_; }
  double at(std::int64_t length) const;
  // p_len == 1 for every length.
  bool all_present() const;
  // 0 < p_1 < 1 (reported, never enforced).
  bool first_length_condition() const;

 private:
  double p_ = 1.0;
  std::vector<double> per_length_;
};

struct Edge {
  Vertex i;
  Vertex j;
  double weight;
};

// Realization of the random graph on {0,...,n}. Lazy windows derive every
// edge from (seed, i, j) on demand; materialized windows hold an explicit
// edge set (fixtures, loaded instances). Immutable and safe to share.
class GraphWindow {
 public:
  static GraphWindow generate(Vertex n, PModel p_model, WeightDistribution dist,
                              std::uint64_t seed);
  static GraphWindow materialized(Vertex n, std::span<const Edge> edges);

  Vertex n() const { return n_; }
  bool is_materialized() const { return dense_ != nullptr; }
  // Every pair i < j carries an edge.
  bool all_present() const { return all_present_; }

  // Lazy windows only.
  const PModel& p_model() const { return *p_model_; }
  const WeightDistribution& dist() const { return *dist_; }
  bool has_dist() const { return dist_ != nullptr; }
  std::uint64_t seed() const { return seed_; }

  // v_{i,j}, or nullopt when the edge is absent. Requires 0 <= i < j <= n.
  std::optional<double> edge_weight(Vertex i, Vertex j) const;

  // Bulk accessors used by the passage code: out[k] = v_{i, j0+k} (resp.
  // v_{i0+k, j}), -inf for absent edges. Ranges must stay inside the window.
  void fill_row(Vertex i, Vertex j0, std::span<double> out) const;
  void fill_col(Vertex j, Vertex i0, std::span<double> out) const;

  std::vector<Edge> present_edges() const;
  GraphWindow to_materialized() const;

 private:
  GraphWindow() = default;
  std::size_t dense_index(Vertex i, Vertex j) const;

  Vertex n_ = 0;
  bool all_present_ = false;
  std::shared_ptr<const PModel> p_model_;
  std::shared_ptr<const WeightDistribution> dist_;
  std::shared_ptr<const std::vector<double>> presence_;
  std::uint64_t seed_ = 0;
  kernels::EdgeStream stream_{};
  std::shared_ptr<const std::vector<double>> dense_;  // upper triangle, row-major
};

inline GraphWindow generate_window(Vertex n, PModel p_model, WeightDistribution dist,
                                   std::uint64_t seed) {
  return GraphWindow::generate(n, std::move(p_model), std::move(dist), seed);
}

inline std::optional<double> edge_weight(const GraphWindow& w, Vertex i, Vertex j) {
  return w.edge_weight(i, j);
}

}  // namespace lpp
