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

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace lpp {

enum class DistKind : std::uint8_t { kConstant, kUniform, kExponential, kPareto, kTabulated };

// One (u, F^{-1}(u)) knot of a tabulated inverse CDF.
struct Knot {
  double u;
  double value;
};

// Law F of the i.i.d. edge weights. Every weight is produced by the inverse
// CDF transform of an open uniform, so all kinds share one sampling path.
// Immutable; safe to share across threads.
class WeightDistribution {
 public:
  static WeightDistribution constant(double v0);
  static WeightDistribution uniform(double a, double b);
  static WeightDistribution exponential(double rate);
  // F(x) = 1 - x^{-s} on x >= 1.
  static WeightDistribution pareto(double s);
  // Monotone piecewise-linear interpolation between knots, clamped at the
  // extreme knots. essinf is declared, never inferred from the knots.
  static WeightDistribution tabulated(std::vector<Knot> knots, double essinf,
                                      std::optional<double> tail_index = std::nullopt);

  // Parses "pareto:s=1.5", "exp:rate=1", "const:v=1", "uniform:a=0,b=2" or
  // "table:path=<csv>[,essinf=<x>][,s=<index>]".
  static WeightDistribution parse(std::string_view spec);

  DistKind kind() const { return kind_; }
  const std::string& spec() const { return spec_; }

  // F^{-1}(u) for u in (0,1). Throws DomainError otherwise.
  double sample(double u) const;
  // F^{-1}(u) for u in [0,1); u == 0 gives the essential infimum.
  double inverse_cdf(double u) const;
  // F^{-1}(1 - q) for q in (0,1], evaluated without forming 1 - q where the
  // closed form allows it.
  double upper_quantile(double q) const;

  std::optional<double> tail_index() const { return tail_index_; }
  double essinf() const { return essinf_; }
  double mean() const { return mean_; }
  bool has_moment(int k) const;
  bool is_degenerate() const;

  // Transform parameters shared with the SIMD kernels: constant -> (v0, 0),
  // uniform -> (a, b - a), exponential -> (-1/rate, 0), pareto -> (-1/s, 0).
  double param_a() const { return a_; }
  double param_b() const { return b_; }

  const std::vector<Knot>& knots() const;

 private:
  WeightDistribution() = default;
  double transform(double u) const;
  double table_lookup(double u) const;

  DistKind kind_ = DistKind::kConstant;
  double a_ = 0.0;
  double b_ = 0.0;
  double essinf_ = 0.0;
  double mean_ = 0.0;
  std::optional<double> tail_index_;
  std::shared_ptr<const std::vector<Knot>> knots_;
  std::string spec_;
};

struct DistStats {
  double mean;
  double essinf;
  std::array<bool, 3> has_moment;  // k = 1, 2, 3
  bool degenerate;
};

DistStats dist_stats(const WeightDistribution& dist);

inline double sample(const WeightDistribution& dist, double u) { return dist.sample(u); }

// Scaling sequence b_n = F^{-1}(1 - 1/C(n+1,2)). Requires a declared tail
// index; throws UnsupportedDistribution for light-tailed laws.
double b_n(const WeightDistribution& dist, std::int64_t n);

// Reads a two-column CSV of (u, value) knots. Blank lines, '#' comments and a
// non-numeric header row are skipped.
std::vector<Knot> read_knots_csv(const std::string& path);

}  // namespace lpp
