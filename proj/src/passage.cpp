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

#include "lpp/passage.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "lpp/errors.hpp"
#include "lpp/kernels.hpp"

namespace lpp {
namespace {

constexpr double kUnreachable = -std::numeric_limits<double>::infinity();
constexpr std::size_t kChunk = 1024;
constexpr Vertex kBruteForceSpan = 20;

void check_pair(const GraphWindow& w, Vertex i, Vertex j, const char* op) {
  if (!(i < j)) throw DomainError(std::string(op) + ": need i < j");
  if (i < 0 || j > w.n()) throw DomainError(std::string(op) + ": vertex outside the window");
}

PassageValue wrap(double v) { return v == kUnreachable ? PassageValue{} : PassageValue{v}; }

void best_path(const GraphWindow& w, Vertex at, Vertex target, double acc, double& best) {
  if (at == target) {
    if (acc > best) best = acc;
    return;
  }
  for (Vertex next = at + 1; next <= target; ++next) {
    if (auto v = w.edge_weight(at, next)) best_path(w, next, target, acc + *v, best);
  }
}

}  // namespace

PassageTable forward_table(const GraphWindow& w, Vertex src, Vertex end) {
  if (src < 0 || end > w.n() || src > end) throw DomainError("forward_table: bad range");
  PassageTable t;
  t.src = src;
  const auto len = static_cast<std::size_t>(end - src + 1);
  t.value.assign(len, kUnreachable);
  t.pred.assign(len, -1);
  t.value[0] = 0.0;
  const auto& k = kernels::active();
  std::vector<double> buf(kChunk);
  for (std::size_t a = 0; a + 1 < len; ++a) {
    const double base = t.value[a];
    if (base == kUnreachable) continue;
    const Vertex i = src + static_cast<Vertex>(a);
    for (std::size_t b0 = a + 1; b0 < len; b0 += kChunk) {
      const std::size_t count = std::min(kChunk, len - b0);
      w.fill_row(i, src + static_cast<Vertex>(b0), std::span<double>(buf.data(), count));
      k.relax_push(t.value.data() + b0, t.pred.data() + b0, base, buf.data(), count,
                   static_cast<std::int32_t>(i));
    }
  }
  return t;
}

std::vector<PassageValue> passage_from(const GraphWindow& w, Vertex src) {
  const PassageTable t = forward_table(w, src, w.n());
  std::vector<PassageValue> out;
  out.reserve(t.value.size());
  for (double v : t.value) out.push_back(wrap(v));
  return out;
}

GeodesicReport geodesic(const GraphWindow& w, Vertex i, Vertex j) {
  check_pair(w, i, j, "geodesic");
  const PassageTable t = forward_table(w, i, j);
  GeodesicReport r;
  const double total = t.value.back();
  if (total == kUnreachable) return r;
  r.value = total;
  Vertex at = j;
  while (at != i) {
    const Vertex prev = t.pred[static_cast<std::size_t>(at - i)];
    r.path.emplace_back(prev, at);
    at = prev;
  }
  std::reverse(r.path.begin(), r.path.end());
  r.h = -std::numeric_limits<double>::infinity();
  for (const auto& [a, b] : r.path) {
    r.ell = std::max(r.ell, b - a);
    r.h = std::max(r.h, *w.edge_weight(a, b));
  }
  return r;
}

PassageValue passage_excluding_direct(const GraphWindow& w, Vertex i, Vertex j) {
  check_pair(w, i, j, "passage_excluding_direct");
  if (j - i < 2) return std::nullopt;
  const PassageTable t = forward_table(w, i, j - 1);
  // Last hop (m, j) with i < m < j, accumulated in path order.
  const auto count = static_cast<std::size_t>(j - i - 1);
  std::vector<double> col(count);
  w.fill_col(j, i + 1, col);
  return wrap(kernels::active().max_plus(t.value.data() + 1, col.data(), count));
}

PassageValue brute_force_passage(const GraphWindow& w, Vertex i, Vertex j) {
  check_pair(w, i, j, "brute_force_passage");
  if (j - i > kBruteForceSpan) {
    throw GuardError("brute_force_passage: span " + std::to_string(j - i) +
                     " exceeds the enumeration guard of 20");
  }
  double best = kUnreachable;
  best_path(w, i, j, 0.0, best);
  return wrap(best);
}

PassageOracle::PassageOracle(const GraphWindow& w, Vertex lo, Vertex hi)
    : window_(&w), lo_(lo), hi_(hi), cached_(w.n() <= kCacheLimit) {
  if (lo < 0 || hi > w.n() || lo > hi) throw DomainError("PassageOracle: bad source range");
  if (!cached_) return;
  // Dense copy of the needed triangle, then one DP per source.
  const auto span = static_cast<std::size_t>(hi - lo + 1);
  std::vector<std::vector<double>> weights(span);
  for (std::size_t a = 0; a + 1 < span; ++a) {
    weights[a].resize(span - a - 1);
    w.fill_row(lo + static_cast<Vertex>(a), lo + static_cast<Vertex>(a) + 1, weights[a]);
  }
  const auto& k = kernels::active();
  rows_.resize(span);
  std::vector<std::int32_t> scratch(span);
  for (std::size_t s = 0; s < span; ++s) {
    auto& row = rows_[s];
    row.assign(span - s, kUnreachable);
    row[0] = 0.0;
    for (std::size_t a = 0; a + 1 < row.size(); ++a) {
      if (row[a] == kUnreachable) continue;
      const auto& wrow = weights[s + a];
      k.relax_push(row.data() + a + 1, scratch.data(), row[a], wrow.data(), row.size() - a - 1,
                   0);
    }
  }
}

double PassageOracle::raw(Vertex a, Vertex b) const {
  if (a < lo_ || b > hi_ || a > b) throw DomainError("PassageOracle: query outside range");
  if (cached_) return rows_[static_cast<std::size_t>(a - lo_)][static_cast<std::size_t>(b - a)];
  if (current_src_ != a) {
    current_ = forward_table(*window_, a, hi_).value;
    current_src_ = a;
  }
  return current_[static_cast<std::size_t>(b - a)];
}

}  // namespace lpp
