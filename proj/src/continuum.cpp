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

#include "lpp/continuum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <utility>

#include "lpp/detail/fastmath.hpp"
#include "lpp/errors.hpp"
#include "lpp/philox.hpp"

namespace lpp {
namespace {

constexpr std::size_t kBruteForceLimit = 20;

void check_s(double s) {
  if (!(s > 0.0 && s < 2.0)) throw ConfigError("continuum: s must lie in (0, 2)");
}

Interval make_interval(double u, double v) { return {std::min(u, v), std::max(u, v)}; }

// Indices of the first k intervals ordered by (right, left, index).
std::vector<std::size_t> by_right(const std::vector<Interval>& Y, std::size_t k) {
  std::vector<std::size_t> order(k);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (Y[a].right != Y[b].right) return Y[a].right < Y[b].right;
    if (Y[a].left != Y[b].left) return Y[a].left < Y[b].left;
    return a < b;
  });
  return order;
}

void check_k(const ContinuumInstance& inst, std::size_t k, const char* op) {
  if (k > inst.k_max()) {
    throw DomainError(std::string(op) + ": k exceeds the generated prefix");
  }
}

}  // namespace

ContinuumInstance generate_continuum(double s, std::size_t k_max, std::uint64_t seed) {
  check_s(s);
  if (k_max < 1) throw ConfigError("generate_continuum: k_max must be >= 1");
  ContinuumInstance inst;
  inst.s = s;
  inst.seed = seed;
  inst.M.reserve(k_max);
  inst.Y.reserve(k_max);
  const auto key = Philox4x32::key_from_seed(seed);
  const double expo = -1.0 / s;
  double sum = 0.0;
  for (std::size_t k = 1; k <= k_max; ++k) {
    const auto idx = static_cast<std::uint32_t>(k);
    const auto w = Philox4x32::apply({idx, 1u, 0u, 0u}, key);
    sum += -std::log(detail::open_uniform(join_words(w[0], w[1])));
    inst.M.push_back(std::pow(sum, expo));
    const auto y = Philox4x32::apply({idx, 2u, 0u, 0u}, key);
    inst.Y.push_back(make_interval(detail::open_uniform(join_words(y[0], y[1])),
                                   detail::open_uniform(join_words(y[2], y[3]))));
  }
  return inst;
}

ContinuumInstance continuum_from_exponentials(double s, std::span<const double> W,
                                              std::span<const std::pair<double, double>> UV) {
  check_s(s);
  if (W.size() != UV.size()) throw ConfigError("continuum_from_exponentials: size mismatch");
  ContinuumInstance inst;
  inst.s = s;
  double sum = 0.0;
  for (std::size_t k = 0; k < W.size(); ++k) {
    if (!(W[k] > 0.0)) throw DomainError("continuum_from_exponentials: W must be positive");
    sum += W[k];
    inst.M.push_back(std::pow(sum, -1.0 / s));
    inst.Y.push_back(make_interval(UV[k].first, UV[k].second));
  }
  return inst;
}

ContinuumInstance continuum_from_parts(double s, std::vector<double> M, std::vector<Interval> Y) {
  if (M.size() != Y.size()) throw ConfigError("continuum_from_parts: size mismatch");
  for (const Interval& y : Y) {
    if (!(0.0 <= y.left && y.left <= y.right && y.right <= 1.0)) {
      throw DomainError("continuum_from_parts: intervals must satisfy 0 <= left <= right <= 1");
    }
  }
  ContinuumInstance inst;
  inst.s = s;
  inst.M = std::move(M);
  inst.Y = std::move(Y);
  return inst;
}

double wk(const ContinuumInstance& inst, std::size_t k) {
  check_k(inst, k, "wk");
  if (k == 0) return 0.0;
  const std::vector<std::size_t> order = by_right(inst.Y, k);
  std::vector<double> rights(k);
  for (std::size_t t = 0; t < k; ++t) rights[t] = inst.Y[order[t]].right;
  // best[t] = optimum over the first t intervals in right-endpoint order.
  std::vector<double> best(k + 1, 0.0);
  for (std::size_t t = 1; t <= k; ++t) {
    const std::size_t id = order[t - 1];
    const double left = inst.Y[id].left;
    auto p = static_cast<std::size_t>(
        std::upper_bound(rights.begin(), rights.end(), left) - rights.begin());
    p = std::min(p, t - 1);
    best[t] = std::max(best[t - 1], best[p] + inst.M[id]);
  }
  return best[k];
}

double wk_bruteforce(const ContinuumInstance& inst, std::size_t k) {
  check_k(inst, k, "wk_bruteforce");
  if (k > kBruteForceLimit) {
    throw GuardError("wk_bruteforce: k = " + std::to_string(k) + " exceeds the guard of 20");
  }
  const std::vector<std::size_t> order = by_right(inst.Y, k);
  double best = 0.0;
  for (std::uint32_t mask = 1; mask < (1u << k); ++mask) {
    bool ok = true;
    for (std::size_t a = 0; a < k && ok; ++a) {
      if (!(mask >> a & 1u)) continue;
      for (std::size_t b = a + 1; b < k && ok; ++b) {
        if ((mask >> b & 1u) && !compatible(inst.Y[order[a]], inst.Y[order[b]])) ok = false;
      }
    }
    if (!ok) continue;
    double total = 0.0;
    for (std::size_t a = 0; a < k; ++a) {
      if (mask >> a & 1u) total = total + inst.M[order[a]];
    }
    best = std::max(best, total);
  }
  return best;
}

std::size_t independence_number(std::span<const Interval> intervals) {
  std::vector<Interval> sorted(intervals.begin(), intervals.end());
  std::sort(sorted.begin(), sorted.end(), [](const Interval& a, const Interval& b) {
    return a.right != b.right ? a.right < b.right : a.left < b.left;
  });
  std::size_t count = 0;
  double last = -std::numeric_limits<double>::infinity();
  for (const Interval& y : sorted) {
    if (y.left >= last) {
      ++count;
      last = y.right;
    }
  }
  return count;
}

TailBound tail_bound_Uk(const ContinuumInstance& inst, std::size_t k, std::size_t i_max,
                        bool exact) {
  if (!(k < i_max) || i_max + 1 > inst.k_max()) {
    throw DomainError("tail_bound_Uk: need k < i_max <= k_max - 1");
  }
  std::vector<std::size_t> points;
  if (exact) {
    for (std::size_t i = k + 1; i <= i_max + 1; ++i) points.push_back(i);
  } else {
    points.push_back(k + 1);
    for (std::size_t c = 1; c <= i_max; c *= 2) {
      if (c > k + 1) points.push_back(c);
    }
    points.push_back(i_max + 1);
    points.erase(std::unique(points.begin(), points.end()), points.end());
  }
  std::vector<double> lambda;
  lambda.reserve(points.size());
  for (std::size_t c : points) lambda.push_back(static_cast<double>(independence_number(inst, c)));

  TailBound tb;
  tb.checkpoints = points.size();
  std::size_t next = 0;  // first checkpoint >= i
  for (std::size_t i = k + 1; i <= i_max; ++i) {
    while (points[next] < i) ++next;
    double bound = lambda[next];
    if (points[next] != i && next > 0) {
      bound = std::min(bound, lambda[next - 1] + static_cast<double>(i - points[next - 1]));
    }
    tb.partial += bound * (inst.M[i - 1] - inst.M[i]);
  }
  tb.closing = lambda.back() * inst.M[i_max];
  return tb;
}

}  // namespace lpp
