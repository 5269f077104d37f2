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
#include <functional>
#include <span>
#include <utility>
#include <vector>

namespace lpp::stats {

// Two-sample Kolmogorov-Smirnov distance sup_x |F_a(x) - F_b(x)| by an exact
// merge scan over the sorted samples. Throws InsufficientData when either
// sample is empty.
double ks_statistic(std::span<const double> a, std::span<const double> b);

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double stderr_slope = 0.0;  // NaN with fewer than three points
  std::size_t points = 0;
};

// Ordinary least squares of y on x.
LinearFit fit_linear(std::span<const double> x, std::span<const double> y);

// OLS on (log n, log y). Needs >= 2 points, all with n > 0 and y > 0.
LinearFit fit_loglog(std::span<const std::pair<double, double>> points);

struct MeanCI {
  double mean = 0.0;
  double variance = 0.0;  // unbiased sample variance
  double lo = 0.0;
  double hi = 0.0;
  double half_width() const { return 0.5 * (hi - lo); }
};

// Normal-approximation 95% interval for the mean.
MeanCI mean_ci(std::span<const double> xs);

// Linear-interpolation quantile of an ascending sample (type 7).
double quantile_sorted(std::span<const double> sorted, double q);
double median(std::vector<double> xs);

struct BootstrapCI {
  double estimate = 0.0;
  double lo = 0.0;
  double hi = 0.0;
  std::size_t resamples = 0;
};

// Percentile bootstrap 95% interval of `statistic`.
BootstrapCI bootstrap_ci(std::span<const double> xs,
                         const std::function<double(std::vector<double>&)>& statistic,
                         std::uint64_t seed, std::size_t resamples = 1000);

double skewness(std::span<const double> xs);
// Non-excess kurtosis (3 for a normal law).
double kurtosis(std::span<const double> xs);

// Intervals [lo1,hi1] and [lo2,hi2] intersect.
inline bool overlaps(double lo1, double hi1, double lo2, double hi2) {
  return lo1 <= hi2 && lo2 <= hi1;
}

}  // namespace lpp::stats
