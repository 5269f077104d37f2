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
#include <limits>
#include <random>
#include <vector>

#include "lpp/errors.hpp"
#include "lpp/passage.hpp"
#include "lpp/renewal.hpp"

using namespace lpp;

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Straight-from-the-definition model of the truncated point processes.
struct NaiveModel {
  Vertex n;
  std::vector<std::vector<double>> v;  // v[i][j], -inf if absent
  std::vector<std::vector<double>> w;  // passage values
  std::vector<std::vector<bool>> reach;

  explicit NaiveModel(const GraphWindow& g) : n(g.n()) {
    const auto sz = static_cast<std::size_t>(n + 1);
    v.assign(sz, std::vector<double>(sz, kNegInf));
    for (Vertex i = 0; i <= n; ++i) {
      for (Vertex j = i + 1; j <= n; ++j) {
        if (auto x = g.edge_weight(i, j)) v[i][j] = *x;
      }
    }
    w.assign(sz, std::vector<double>(sz, kNegInf));
    reach.assign(sz, std::vector<bool>(sz, false));
    for (Vertex a = 0; a <= n; ++a) {
      w[a][a] = 0.0;
      reach[a][a] = true;
      for (Vertex b = a + 1; b <= n; ++b) {
        for (Vertex m = a; m < b; ++m) {
          if (v[m][b] == kNegInf || w[a][m] == kNegInf) continue;
          w[a][b] = std::max(w[a][b], w[a][m] + v[m][b]);
          reach[a][b] = true;
        }
      }
    }
  }

  std::vector<Vertex> tau() const {
    std::vector<Vertex> out;
    for (Vertex x = 0; x <= n; ++x) {
      bool ok = true;
      for (Vertex y = 0; y <= n && ok; ++y) {
        if (y < x) ok = reach[y][x];
        if (y > x) ok = reach[x][y];
      }
      if (ok) out.push_back(x);
    }
    return out;
  }

  bool forward(Vertex x, double c, Vertex H) const {
    for (Vertex l = 1; l <= H; ++l) {
      if (!(w[x][x + l] >= c * l)) return false;
    }
    return true;
  }
  bool backward(Vertex x, double c, Vertex H) const {
    for (Vertex l = 1; l <= H; ++l) {
      if (!(w[x - l][x] >= c * l)) return false;
    }
    return true;
  }
  bool crossing(Vertex x, double c, Vertex H) const {
    for (Vertex j = 1; j <= H; ++j) {
      for (Vertex l = 1; l <= H; ++l) {
        if (v[x - j][x + l] >= c * static_cast<double>(j + l)) return false;
      }
    }
    return true;
  }
};

GraphWindow random_window(std::mt19937_64& rng, Vertex n, double p, int law) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<Edge> edges;
  for (Vertex i = 0; i < n; ++i) {
    for (Vertex j = i + 1; j <= n; ++j) {
      if (u(rng) >= p) continue;
      double x = 0.0;
      if (law == 0) x = -std::log1p(-u(rng));
      if (law == 1) x = std::pow(1.0 - u(rng), -1.0 / 1.5);
      if (law == 2) x = static_cast<double>(rng() % 3);
      edges.push_back({i, j, x});
    }
  }
  return GraphWindow::materialized(n, edges);
}

GraphWindow unit_window(Vertex n) {
  return generate_window(n, PModel::constant(1), WeightDistribution::constant(1), 1);
}

std::vector<Vertex> range(Vertex a, Vertex b) {
  std::vector<Vertex> out;
  for (Vertex x = a; x <= b; ++x) out.push_back(x);
  return out;
}

bool subset(const std::vector<Vertex>& a, const std::vector<Vertex>& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

}  // namespace

TEST_SUITE("renewal") {
  TEST_CASE("strongly connected points") {
    CHECK(strongly_connected_points(unit_window(10)) == range(0, 10));
    const std::vector<Edge> e1{{0, 1, 1}, {1, 2, 1}, {2, 3, 1}, {0, 2, 1}};
    CHECK(strongly_connected_points(GraphWindow::materialized(3, e1)) == range(0, 3));
    // Only (0,2): vertex 1 is isolated, so no vertex reaches (or is reached
    // from) every other vertex.
    const std::vector<Edge> e2{{0, 2, 1}};
    CHECK(strongly_connected_points(GraphWindow::materialized(2, e2)).empty());
    const std::vector<Edge> e3{{0, 1, 1}, {1, 2, 1}, {0, 2, 1}, {2, 3, 1}, {1, 3, 1}};
    CHECK(strongly_connected_points(GraphWindow::materialized(4, e3)).empty());
  }

  TEST_CASE("strongly connected points match transitive closure") {
    std::mt19937_64 rng(31);
    for (int rep = 0; rep < 300; ++rep) {
      const Vertex n = 1 + static_cast<Vertex>(rng() % 40);
      const double p = rep % 3 == 0 ? 0.15 : (rep % 3 == 1 ? 0.4 : 0.8);
      const auto g = random_window(rng, n, p, 0);
      REQUIRE(strongly_connected_points(g) == NaiveModel(g).tau());
    }
  }

  TEST_CASE("unit-weight fixtures") {
    const auto w = unit_window(10);
    const auto a = detect_renewals(w, 0.6, 3);
    CHECK(a.gamma == range(3, 7));
    CHECK(a.rho == range(3, 7));
    CHECK(a.tau == range(0, 10));
    REQUIRE(a.cycles.size() == 4);
    for (const Cycle& c : a.cycles) {
      CHECK(c.length == 1);
      CHECK(c.weight == 1.0);
    }
    const auto e = cycle_estimators(a, 1.0);
    CHECK(e.lambda_hat == 1.0);
    CHECK(e.C_cycle == 1.0);
    CHECK(e.sigma2_hat == 0.0);
    CHECK(check_decomposition(w, a).ok);
    CHECK(*passage_from(w, 0)[10] == *passage_from(w, 0)[5] + *passage_from(w, 5)[5]);

    const auto b = detect_renewals(w, 0.4, 3);
    CHECK(b.gamma.empty());
    CHECK(b.rho == range(3, 7));
    CHECK_THROWS_AS(cycle_estimators(b, 1.0), InsufficientData);
  }

  TEST_CASE("single renewal point is insufficient") {
    const auto a = detect_renewals(unit_window(6), 0.6, 3);
    CHECK(a.gamma == std::vector<Vertex>{3});
    CHECK_THROWS_AS(cycle_estimators(a), InsufficientData);
  }

  TEST_CASE("argument checks") {
    CHECK_THROWS_AS(detect_renewals(unit_window(10), 0.0, 3), ConfigError);
    CHECK_THROWS_AS(detect_renewals(unit_window(10), 0.5, 0), ConfigError);
    CHECK(detect_renewals(unit_window(4), 0.5, 3).gamma.empty());
  }

  TEST_CASE("detection equals the definitional model") {
    std::mt19937_64 rng(77);
    for (int rep = 0; rep < 400; ++rep) {
      const int law = rep % 3;
      const Vertex H = 1 + static_cast<Vertex>(rng() % 6);
      const Vertex n = 2 * H + static_cast<Vertex>(rng() % 40);
      const double p = rep % 4 == 0 ? 0.5 : (rep % 4 == 1 ? 0.8 : 1.0);
      const auto g = random_window(rng, n, p, law);
      const NaiveModel m(g);
      const double c = law == 1 ? 1.5 : (law == 2 ? 0.5 : 0.2 + 0.1 * (rep % 5));
      const auto a = detect_renewals(g, c, H);
      const auto tau = m.tau();
      std::vector<Vertex> rho;
      std::vector<Vertex> gamma;
      for (Vertex x = H; x <= n - H; ++x) {
        if (!std::binary_search(tau.begin(), tau.end(), x) || !m.backward(x, c, H)) continue;
        rho.push_back(x);
        if (m.forward(x, c, H) && m.crossing(x, c, H)) gamma.push_back(x);
      }
      INFO("rep " << rep);
      REQUIRE(a.tau == tau);
      REQUIRE(a.rho == rho);
      REQUIRE(a.gamma == gamma);
      REQUIRE(a.cycles.size() + (gamma.empty() ? 0 : 1) == gamma.size());
      for (std::size_t k = 0; k < a.cycles.size(); ++k) {
        CHECK(a.cycles[k].length == gamma[k + 1] - gamma[k]);
        CHECK(a.cycles[k].weight == doctest::Approx(m.w[gamma[k]][gamma[k + 1]]).epsilon(1e-12));
      }
    }
  }

  TEST_CASE("inclusion chain and decomposition on random lazy windows") {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
      const double p = seed % 2 == 0 ? 1.0 : 0.6;
      const auto w = generate_window(300, PModel::constant(p), WeightDistribution::exponential(1), seed);
      const double c = c_range(w).midpoint();
      const auto a = detect_renewals(w, c, 15);
      CHECK(subset(a.gamma, a.rho));
      CHECK(subset(a.rho, a.tau));
      const auto dc = check_decomposition(w, a);
      CHECK(dc.ok);
      CHECK(dc.counterexamples.empty());
    }
  }

  TEST_CASE("decomposition negative control") {
    std::vector<Edge> edges;
    for (Vertex i = 0; i < 10; ++i) {
      for (Vertex j = i + 1; j <= 10; ++j) edges.push_back({i, j, j - i == 2 && i == 4 ? 10.0 : 1.0});
    }
    const auto w = GraphWindow::materialized(10, edges);
    auto a = detect_renewals(w, 0.6, 3);
    CHECK(std::find(a.gamma.begin(), a.gamma.end(), 5) == a.gamma.end());
    CHECK(check_decomposition(w, a).ok);
    a.gamma.push_back(5);
    std::sort(a.gamma.begin(), a.gamma.end());
    const auto dc = check_decomposition(w, a);
    CHECK_FALSE(dc.ok);
    REQUIRE_FALSE(dc.counterexamples.empty());
    bool found = false;
    for (const auto& wit : dc.counterexamples) {
      CHECK(wit.x == 5);
      if (wit.a == 4 && wit.b == 6) {
        found = true;
        CHECK(wit.whole == 10.0);
        CHECK(wit.split == 2.0);
      }
    }
    CHECK(found);
  }

  TEST_CASE("monotone in the horizon") {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
      const auto w = generate_window(400, PModel::constant(1), WeightDistribution::exponential(1), seed);
      const auto small = detect_renewals(w, 0.5, 5);
      const auto large = detect_renewals(w, 0.5, 20);
      std::vector<Vertex> shared;
      for (Vertex x : small.gamma) {
        if (x >= 20 && x <= 380) shared.push_back(x);
      }
      CHECK(subset(large.gamma, shared));
    }
  }

  TEST_CASE("per-condition monotonicity in c") {
    for (std::uint64_t seed = 1; seed <= 8; ++seed) {
      const auto w = generate_window(300, PModel::constant(seed % 2 ? 1.0 : 0.7),
                                     WeightDistribution::exponential(1), seed);
      const auto lo = renewal_conditions(w, 0.3, 10);
      const auto hi = renewal_conditions(w, 0.7, 10);
      REQUIRE(lo.forward.size() == hi.forward.size());
      for (std::size_t k = 0; k < lo.forward.size(); ++k) {
        CHECK(hi.forward[k] <= lo.forward[k]);
        CHECK(hi.backward[k] <= lo.backward[k]);
        CHECK(hi.crossing[k] >= lo.crossing[k]);
      }
    }
  }

  TEST_CASE("c-range") {
    const auto e = generate_window(50, PModel::constant(1), WeightDistribution::exponential(1), 1);
    const CRange r = c_range(e);
    CHECK(r.low == 0.0);
    CHECK(r.high == 1.0);
    CHECK(r.midpoint() == 0.5);
    const auto u = generate_window(50, PModel::constant(1), WeightDistribution::uniform(1, 3), 1);
    CHECK(c_range(u).low == 1.0);
    CHECK(c_range(u).high == 2.0);
    CHECK(c_range(dist_stats(WeightDistribution::uniform(1, 3))).high == 2.0);
    CHECK(c_range(unit_window(20)).empty());

    const auto half = generate_window(2000, PModel::constant(0.5), WeightDistribution::exponential(1), 3);
    const CRange third = c_range(half, CRangeMode::kThirdMoment, 11);
    const auto tau = strongly_connected_points(half);
    CHECK(third.gamma_hat == doctest::Approx(static_cast<double>(tau.size()) / 2001.0));
    CHECK(third.intervals == tau.size() - 1);
    CHECK(third.high_ci_lo <= third.high);
    CHECK(third.high <= third.high_ci_hi);
    CHECK(third.high > third.low);
    // Direct recomputation of the estimate.
    double sum = 0.0;
    for (std::size_t k = 1; k < tau.size(); ++k) {
      double m = INFINITY;
      for (Vertex i = tau[k - 1]; i < tau[k]; ++i) {
        for (Vertex j = i + 1; j <= tau[k]; ++j) {
          if (auto v = half.edge_weight(i, j)) m = std::min(m, *v);
        }
      }
      sum += m;
    }
    CHECK(third.high == doctest::Approx(third.gamma_hat * sum / static_cast<double>(tau.size() - 1)));
  }

  TEST_CASE("mu / nu fixtures") {
    const auto w = unit_window(30);
    const auto d = mu_nu_diagnostics(w, 0.6, 3);
    CHECK(d.nu_censored == 0);
    CHECK(d.nu_samples.size() == 28);
    for (Vertex g : d.nu_samples) CHECK(g == 1);
    CHECK(d.mu_infinite_fraction == 1.0);
    const auto d4 = mu_nu_diagnostics(w, 0.4, 3);
    REQUIRE_FALSE(d4.mu_samples_finite.empty());
    for (Vertex m : d4.mu_samples_finite) CHECK(m == 1);
    CHECK(d4.mu_infinite == 0);
  }

  TEST_CASE("infinite mu happens exactly at renewal points") {
    for (std::uint64_t seed = 1; seed <= 6; ++seed) {
      const auto w = generate_window(500, PModel::constant(1), WeightDistribution::exponential(1), seed);
      const auto a = detect_renewals(w, 0.5, 20);
      const auto d = mu_nu_diagnostics(w, 0.5, 20);
      CHECK(d.mu_infinite == a.gamma.size());
      CHECK(d.mu_samples_finite.size() + d.mu_infinite == a.rho.size());
    }
  }

  TEST_CASE("nu has a decreasing log-survival") {
    const auto w = generate_window(4000, PModel::constant(1), WeightDistribution::exponential(1), 5);
    const auto d = mu_nu_diagnostics(w, 0.5, 200);
    REQUIRE(d.nu_survival_points >= 3);
    CHECK(d.nu_log_survival_slope < 0.0);
    CHECK(d.nu_log_survival_slope + 1.96 * d.nu_log_survival_stderr < 0.0);
  }

  TEST_CASE("cycle estimators on a real window") {
    const auto w = generate_window(4000, PModel::constant(1), WeightDistribution::exponential(1), 8);
    const auto a = detect_renewals(w, 0.5, 100);
    const auto e = cycle_estimators(a);
    CHECK(e.cycles == a.gamma.size() - 1);
    CHECK(e.lambda_hat == doctest::Approx(static_cast<double>(a.gamma.size()) / 3801.0));
    CHECK(std::isfinite(e.sigma2_hat));
    CHECK(e.sigma2_hat > 0.0);
    // C_cycle is the slope of w along the renewal points.
    const double span = static_cast<double>(a.gamma.back() - a.gamma.front());
    const double wspan = *passage_from(w, a.gamma.front())[static_cast<std::size_t>(span)];
    CHECK(e.C_cycle == doctest::Approx(wspan / span).epsilon(1e-10));
  }
}
