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

#include "lpp/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include "lpp/errors.hpp"

namespace lpp::stats {
namespace {
constexpr double kZ95 = 1.959963984540054;
}

double ks_statistic(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) throw InsufficientData("ks_statistic: both samples must be non-empty");
  std::vector<double> sa(a.begin(), a.end());
  std::vector<double> sb(b.begin(), b.end());
  std::sort(sa.begin(), sa.end());
  std::sort(sb.begin(), sb.end());
  const double na = static_cast<double>(sa.size());
  const double nb = static_cast<double>(sb.size());
  std::size_t ia = 0;
  std::size_t ib = 0;
  double d = 0.0;
  while (ia < sa.size() && ib < sb.size()) {
    const double x = std::min(sa[ia], sb[ib]);
    while (ia < sa.size() && sa[ia] == x) ++ia;
    while (ib < sb.size() && sb[ib] == x) ++ib;
    d = std::max(d, std::abs(static_cast<double>(ia) / na - static_cast<double>(ib) / nb));
  }
  return d;
}

LinearFit fit_linear(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) throw InsufficientData("fit_linear: need >= 2 points");
  const double m = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / m;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / m;
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    sxx += (x[k] - mx) * (x[k] - mx);
    sxy += (x[k] - mx) * (y[k] - my);
  }
  if (sxx == 0.0) throw InsufficientData("fit_linear: all x values coincide");
  LinearFit f;
  f.points = x.size();
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  if (x.size() > 2) {
    double ssr = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) {
      const double r = y[k] - (f.intercept + f.slope * x[k]);
      ssr += r * r;
    }
    f.stderr_slope = std::sqrt(ssr / (m - 2.0) / sxx);
  } else {
    f.stderr_slope = std::numeric_limits<double>::quiet_NaN();
  }
  return f;
}

LinearFit fit_loglog(std::span<const std::pair<double, double>> points) {
  std::vector<double> lx;
  std::vector<double> ly;
  for (const auto& [n, y] : points) {
    if (!(n > 0.0) || !(y > 0.0)) throw DomainError("fit_loglog: coordinates must be positive");
    lx.push_back(std::log(n));
    ly.push_back(std::log(y));
  }
  return fit_linear(lx, ly);
}

MeanCI mean_ci(std::span<const double> xs) {
  if (xs.empty()) throw InsufficientData("mean_ci: empty sample");
  const double m = static_cast<double>(xs.size());
  MeanCI r;
  r.mean = std::accumulate(xs.begin(), xs.end(), 0.0) / m;
  if (xs.size() > 1) {
    double ss = 0.0;
    for (double x : xs) ss += (x - r.mean) * (x - r.mean);
    r.variance = ss / (m - 1.0);
  }
  const double half = kZ95 * std::sqrt(r.variance / m);
  r.lo = r.mean - half;
  r.hi = r.mean + half;
  return r;
}

double quantile_sorted(std::span<const double> sorted, double q) {
  if (sorted.empty()) throw InsufficientData("quantile: empty sample");
  const double pos = q * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, sorted.size() - 1);
  const double t = pos - static_cast<double>(lo);
  return sorted[lo] + t * (sorted[hi] - sorted[lo]);
}

double median(std::vector<double> xs) {
  std::sort(xs.begin(), xs.end());
  return quantile_sorted(xs, 0.5);
}

BootstrapCI bootstrap_ci(std::span<const double> xs,
                         const std::function<double(std::vector<double>&)>& statistic,
                         std::uint64_t seed, std::size_t resamples) {
  if (xs.empty()) throw InsufficientData("bootstrap_ci: empty sample");
  BootstrapCI r;
  r.resamples = resamples;
  std::vector<double> work(xs.begin(), xs.end());
  r.estimate = statistic(work);
  std::mt19937_64 rng(seed);
  std::vector<double> stats;
  stats.reserve(resamples);
  const std::uint64_t n = xs.size();
  for (std::size_t b = 0; b < resamples; ++b) {
    for (auto& x : work) x = xs[static_cast<std::size_t>(rng() % n)];
    stats.push_back(statistic(work));
  }
  std::sort(stats.begin(), stats.end());
  r.lo = quantile_sorted(stats, 0.025);
  r.hi = quantile_sorted(stats, 0.975);
  return r;
}

namespace {
double central_moment(std::span<const double> xs, double mean, int k) {
  double s = 0.0;
  for (double x : xs) s += std::pow(x - mean, k);
  return s / static_cast<double>(xs.size());
}
}  // namespace

double skewness(std::span<const double> xs) {
  if (xs.size() < 3) throw InsufficientData("skewness: need >= 3 values");
  const double m = std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
  const double m2 = central_moment(xs, m, 2);
  if (m2 == 0.0) return 0.0;
  return central_moment(xs, m, 3) / std::pow(m2, 1.5);
}

double kurtosis(std::span<const double> xs) {
  if (xs.size() < 4) throw InsufficientData("kurtosis: need >= 4 values");
  const double m = std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
  const double m2 = central_moment(xs, m, 2);
  if (m2 == 0.0) return 3.0;
  return central_moment(xs, m, 4) / (m2 * m2);
}

}  // namespace lpp::stats
