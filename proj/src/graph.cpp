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

#include "lpp/graph.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "lpp/errors.hpp"
#include "lpp/philox.hpp"

namespace lpp {
namespace {

constexpr double kAbsent = -std::numeric_limits<double>::infinity();
constexpr Vertex kMaxLazyN = Vertex{0xFFFFFFFE};
constexpr Vertex kMaxDenseN = 20000;

kernels::WeightLaw law_of(DistKind kind) {
  switch (kind) {
    case DistKind::kConstant:
      return kernels::WeightLaw::kConstant;
    case DistKind::kUniform:
      return kernels::WeightLaw::kUniform;
    case DistKind::kExponential:
      return kernels::WeightLaw::kExponential;
    case DistKind::kPareto:
      return kernels::WeightLaw::kPareto;
    case DistKind::kTabulated:
      return kernels::WeightLaw::kTabulated;
  }
  return kernels::WeightLaw::kConstant;
}

}  // namespace

PModel PModel::constant(double p) {
  if (!(p > 0.0 && p <= 1.0)) {
    throw ConfigError("edge probability must lie in (0,1], got " + std::to_string(p));
  }
  PModel m;
  m.p_ = p;
  return m;
}

PModel PModel::per_length(std::vector<double> p) {
  if (p.empty()) throw ConfigError("per-length edge probabilities must be non-empty");
  for (std::size_t k = 0; k < p.size(); ++k) {
    if (!(p[k] >= 0.0 && p[k] <= 1.0)) {
      throw ConfigError("p_" + std::to_string(k + 1) + " must lie in [0,1]");
    }
  }
  PModel m;
  m.p_ = p.front();
  m.per_length_ = std::move(p);
  return m;
}

double PModel::at(std::int64_t length) const {
  if (per_length_.empty()) return p_;
  const auto idx = static_cast<std::size_t>(length - 1);
  return idx < per_length_.size() ? per_length_[idx] : per_length_.back();
}

bool PModel::all_present() const {
  if (per_length_.empty()) return p_ == 1.0;
  for (double q : per_length_) {
    if (q != 1.0) return false;
  }
  return true;
}

bool PModel::first_length_condition() const {
  const double p1 = at(1);
  return p1 > 0.0 && p1 < 1.0;
}

GraphWindow GraphWindow::generate(Vertex n, PModel p_model, WeightDistribution dist,
                                  std::uint64_t seed) {
  if (n < 1) throw ConfigError("window size n must be at least 1");
  if (n > kMaxLazyN) throw ConfigError("window size exceeds the 32-bit vertex range");
  GraphWindow w;
  w.n_ = n;
  w.all_present_ = p_model.all_present();
  w.p_model_ = std::make_shared<const PModel>(std::move(p_model));
  w.dist_ = std::make_shared<const WeightDistribution>(std::move(dist));
  w.seed_ = seed;

  const auto key = Philox4x32::key_from_seed(seed);
  w.stream_.key0 = key[0];
  w.stream_.key1 = key[1];
  w.stream_.law = law_of(w.dist_->kind());
  w.stream_.a = w.dist_->param_a();
  w.stream_.b = w.dist_->param_b();
  w.stream_.dist = w.dist_.get();
  if (!w.all_present_) {
    // Index 0 is never read; a few trailing entries keep SIMD loads in range.
    auto presence = std::make_shared<std::vector<double>>(static_cast<std::size_t>(n) + 8, 0.0);
    for (Vertex len = 1; len <= n; ++len) (*presence)[len] = w.p_model_->at(len);
    w.presence_ = presence;
    w.stream_.presence = presence->data();
  }
  return w;
}

GraphWindow GraphWindow::materialized(Vertex n, std::span<const Edge> edges) {
  if (n < 1) throw ConfigError("window size n must be at least 1");
  if (n > kMaxDenseN) throw ConfigError("materialized windows are limited to n <= 20000");
  GraphWindow w;
  w.n_ = n;
  const auto size = static_cast<std::size_t>(n) * static_cast<std::size_t>(n + 1) / 2;
  auto dense = std::make_shared<std::vector<double>>(size, kAbsent);
  std::size_t present = 0;
  for (const Edge& e : edges) {
    if (!(0 <= e.i && e.i < e.j && e.j <= n)) {
      throw ConfigError("edge (" + std::to_string(e.i) + "," + std::to_string(e.j) +
                        ") is not a forward edge inside the window");
    }
    if (!std::isfinite(e.weight)) throw ConfigError("edge weights must be finite");
    double& slot = (*dense)[w.dense_index(e.i, e.j)];
    if (slot == kAbsent) ++present;
    slot = e.weight;
  }
  w.all_present_ = present == size;
  w.dense_ = dense;
  return w;
}

std::size_t GraphWindow::dense_index(Vertex i, Vertex j) const {
  // Row i starts after rows 0..i-1, which hold n, n-1, ..., n-i+1 entries.
  const auto ui = static_cast<std::size_t>(i);
  const auto un = static_cast<std::size_t>(n_);
  return ui * un - ui * (ui - 1) / 2 + static_cast<std::size_t>(j - i - 1);
}

std::optional<double> GraphWindow::edge_weight(Vertex i, Vertex j) const {
  if (!(i < j)) throw DomainError("edge_weight: need i < j");
  if (i < 0 || j > n_) throw DomainError("edge_weight: vertex outside the window");
  const double v = dense_ ? (*dense_)[dense_index(i, j)]
                          : kernels::edge_reference(stream_, static_cast<std::uint32_t>(i),
                                                    static_cast<std::uint32_t>(j));
  if (v == kAbsent) return std::nullopt;
  return v;
}

void GraphWindow::fill_row(Vertex i, Vertex j0, std::span<double> out) const {
  if (out.empty()) return;
  if (dense_) {
    const double* row = dense_->data() + dense_index(i, j0);
    std::copy(row, row + out.size(), out.begin());
    return;
  }
  kernels::active().fill_row(stream_, static_cast<std::uint32_t>(i),
                             static_cast<std::uint32_t>(j0), out.size(), out.data());
}

void GraphWindow::fill_col(Vertex j, Vertex i0, std::span<double> out) const {
  if (out.empty()) return;
  if (dense_) {
    for (std::size_t k = 0; k < out.size(); ++k) {
      out[k] = (*dense_)[dense_index(i0 + static_cast<Vertex>(k), j)];
    }
    return;
  }
  kernels::active().fill_col(stream_, static_cast<std::uint32_t>(j),
                             static_cast<std::uint32_t>(i0), out.size(), out.data());
}

std::vector<Edge> GraphWindow::present_edges() const {
  std::vector<Edge> edges;
  std::vector<double> row(static_cast<std::size_t>(n_));
  for (Vertex i = 0; i < n_; ++i) {
    std::span<double> out(row.data(), static_cast<std::size_t>(n_ - i));
    fill_row(i, i + 1, out);
    for (std::size_t k = 0; k < out.size(); ++k) {
      if (out[k] != kAbsent) edges.push_back({i, i + 1 + static_cast<Vertex>(k), out[k]});
    }
  }
  return edges;
}

GraphWindow GraphWindow::to_materialized() const {
  if (dense_) return *this;
  const auto edges = present_edges();
  return materialized(n_, edges);
}

}  // namespace lpp
