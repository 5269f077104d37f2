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

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <utility>
#include <vector>

#include "lpp/errors.hpp"
#include "lpp/stats.hpp"

using namespace lpp;
using namespace lpp::stats;

namespace {

// Evaluates both empirical CDFs at every sample point.
double ks_naive(const std::vector<double>& a, const std::vector<double>& b) {
  auto ecdf = [](const std::vector<double>& s, double t) {
    return static_cast<double>(std::count_if(s.begin(), s.end(), [t](double x) { return x <= t; })) /
           static_cast<double>(s.size());
  };
  double d = 0.0;
  for (const auto* s : {&a, &b}) {
    for (double t : *s) d = std::max(d, std::abs(ecdf(a, t) - ecdf(b, t)));
  }
  return d;
}

}  // namespace

TEST_SUITE("stats") {
  TEST_CASE("ks examples") {
    const std::vector<double> a{1, 2, 3};
    CHECK(ks_statistic(a, a) == 0.0);
    CHECK(ks_statistic(std::vector<double>{0, 0}, std::vector<double>{1, 1}) == 1.0);
    CHECK(ks_statistic(std::vector<double>{1, 2}, std::vector<double>{1, 3}) == 0.5);
    CHECK_THROWS_AS(ks_statistic(std::vector<double>{}, a), InsufficientData);
    CHECK_THROWS_AS(ks_statistic(a, std::vector<double>{}), InsufficientData);
  }

  TEST_CASE("ks matches direct ECDF evaluation") {
    std::mt19937_64 rng(3);
    for (int rep = 0; rep < 300; ++rep) {
      std::vector<double> a(1 + rng() % 30);
      std::vector<double> b(1 + rng() % 30);
      for (auto& x : a) x = static_cast<double>(rng() % 10);
      for (auto& x : b) x = static_cast<double>(rng() % 12) * 0.9;
      const double d = ks_statistic(a, b);
      CHECK(d == doctest::Approx(ks_naive(a, b)).epsilon(1e-14));
      CHECK(d == ks_statistic(b, a));
      CHECK(d >= 0.0);
      CHECK(d <= 1.0);
    }
  }

  TEST_CASE("log-log fits") {
    std::vector<std::pair<double, double>> sq{{10, 100}, {100, 1e4}, {1000, 1e6}};
    const auto f = fit_loglog(sq);
    CHECK(f.slope == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(f.stderr_slope < 1e-12);
    CHECK(f.points == 3);
    std::vector<std::pair<double, double>> flat{{10, 4}, {100, 4}, {1000, 4}};
    CHECK(std::abs(fit_loglog(flat).slope) < 1e-14);
    std::mt19937_64 rng(17);
    std::normal_distribution<double> eps(0.0, 0.01);
    std::vector<std::pair<double, double>> noisy;
    for (int i = 0; i < 10; ++i) {
      const double n = std::pow(10.0, 1.0 + 0.3 * i);
      noisy.push_back({n, std::pow(n, 2.0 / 3.0) * (1.0 + eps(rng))});
    }
    CHECK(std::abs(fit_loglog(noisy).slope - 2.0 / 3.0) < 0.05);
    std::vector<std::pair<double, double>> bad{{10, 1}, {100, 0}};
    CHECK_THROWS_AS(fit_loglog(bad), DomainError);
    std::vector<std::pair<double, double>> two{{10, 1}, {100, 10}};
    CHECK(fit_loglog(two).slope == doctest::Approx(1.0));
    CHECK(std::isnan(fit_loglog(two).stderr_slope));
  }

  TEST_CASE("linear fit closed form") {
    const std::vector<double> x{0, 1, 2, 3};
    const std::vector<double> y{1, 3, 2, 5};
    const auto f = fit_linear(x, y);
    // Hand-computed: mean x 1.5, mean y 2.75, sxy 5.5, sxx 5.
    CHECK(f.slope == doctest::Approx(1.1));
    CHECK(f.intercept == doctest::Approx(1.1));
    // Residuals -0.1, 0.8, -1.3, 0.6: ssr 2.7.
    CHECK(f.stderr_slope == doctest::Approx(std::sqrt(2.7 / 2.0 / 5.0)));
    const std::vector<double> same{2, 2, 2};
    CHECK_THROWS_AS(fit_linear(same, same), InsufficientData);
  }

  TEST_CASE("mean confidence interval") {
    const std::vector<double> xs{1, 2, 3, 4};
    const auto ci = mean_ci(xs);
    CHECK(ci.mean == 2.5);
    CHECK(ci.variance == doctest::Approx(5.0 / 3.0));
    CHECK(ci.half_width() == doctest::Approx(1.96 * std::sqrt(5.0 / 12.0)));
    const std::vector<double> constant(10, 7.0);
    const auto c = mean_ci(constant);
    CHECK(c.variance == 0.0);
    CHECK(c.lo == 7.0);
    CHECK(c.hi == 7.0);
    // Coverage near 95% for normal data.
    std::mt19937_64 rng(8);
    std::normal_distribution<double> z(3.0, 2.0);
    int covered = 0;
    for (int rep = 0; rep < 2000; ++rep) {
      std::vector<double> s(50);
      for (auto& v : s) v = z(rng);
      const auto r = mean_ci(s);
      covered += r.lo <= 3.0 && 3.0 <= r.hi;
    }
    CHECK(covered > 1840);
    CHECK(covered < 1960);
  }

  TEST_CASE("quantiles") {
    const std::vector<double> xs{1, 2, 3, 4, 5};
    CHECK(quantile_sorted(xs, 0.0) == 1.0);
    CHECK(quantile_sorted(xs, 1.0) == 5.0);
    CHECK(quantile_sorted(xs, 0.5) == 3.0);
    CHECK(quantile_sorted(xs, 0.1) == doctest::Approx(1.4));
    CHECK(median({4, 1, 3, 2}) == 2.5);
    CHECK_THROWS_AS(median({}), InsufficientData);
  }

  TEST_CASE("bootstrap") {
    std::mt19937_64 rng(2);
    std::exponential_distribution<double> e(1.0);
    std::vector<double> xs(400);
    for (auto& x : xs) x = e(rng);
    auto med = [](std::vector<double>& v) { return median(v); };
    const auto a = bootstrap_ci(xs, med, 5);
    const auto b = bootstrap_ci(xs, med, 5);
    CHECK(a.estimate == median(xs));
    CHECK(a.lo == b.lo);
    CHECK(a.hi == b.hi);
    CHECK(a.resamples == 1000);
    CHECK(a.lo <= a.estimate);
    CHECK(a.estimate <= a.hi);
    CHECK(a.lo < std::log(2.0));
    CHECK(std::log(2.0) < a.hi);
    const std::vector<double> one{3.0};
    const auto c = bootstrap_ci(one, med, 1);
    CHECK(c.lo == 3.0);
    CHECK(c.hi == 3.0);
  }

  TEST_CASE("shape moments") {
    const std::vector<double> sym{-2, -1, 0, 1, 2};
    CHECK(skewness(sym) == 0.0);
    // Population moments: m2 = 2, m4 = 6.8.
    CHECK(kurtosis(sym) == doctest::Approx(6.8 / 4.0));
    const std::vector<double> skewed{0, 0, 0, 10};
    // m = 2.5, m2 = 18.75, m3 = 93.75.
    CHECK(skewness(skewed) == doctest::Approx(93.75 / std::pow(18.75, 1.5)));
    std::mt19937_64 rng(12);
    std::normal_distribution<double> z;
    std::vector<double> big(200000);
    for (auto& v : big) v = z(rng);
    CHECK(std::abs(skewness(big)) < 0.02);
    CHECK(std::abs(kurtosis(big) - 3.0) < 0.05);
    CHECK_THROWS_AS(skewness(std::vector<double>{1, 2}), InsufficientData);
  }

  TEST_CASE("interval overlap") {
    CHECK(overlaps(0, 1, 1, 2));
    CHECK(overlaps(0, 3, 1, 2));
    CHECK_FALSE(overlaps(0, 1, 1.5, 2));
  }
}
