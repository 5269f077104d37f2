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

#include <cmath>
#include <random>
#include <vector>

#include "lpp/errors.hpp"
#include "lpp/passage.hpp"

using namespace lpp;

namespace {

GraphWindow fixture3() {
  const std::vector<Edge> e{{0, 1, 1}, {0, 2, 5}, {0, 3, 1}, {1, 2, 1}, {1, 3, 1}, {2, 3, 1}};
  return GraphWindow::materialized(3, e);
}

GraphWindow random_window(std::mt19937_64& rng, Vertex n, double p) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<Edge> edges;
  const int law = static_cast<int>(rng() % 3);
  for (Vertex i = 0; i < n; ++i) {
    for (Vertex j = i + 1; j <= n; ++j) {
      if (u(rng) >= p) continue;
      double w = 0.0;
      if (law == 0) w = -std::log1p(-u(rng));
      if (law == 1) w = std::pow(1.0 - u(rng), -1.0 / 1.5);
      if (law == 2) w = static_cast<double>(1 + rng() % 4);
      edges.push_back({i, j, w});
    }
  }
  return GraphWindow::materialized(n, edges);
}

}  // namespace

TEST_SUITE("passage") {
  TEST_CASE("unit weights give W = (0,1,...,n)") {
    const auto w = generate_window(5, PModel::constant(1), WeightDistribution::constant(1), 1);
    const auto W = passage_from(w, 0);
    REQUIRE(W.size() == 6);
    for (std::size_t k = 0; k < W.size(); ++k) CHECK(W[k] == static_cast<double>(k));
  }

  TEST_CASE("three-vertex fixture") {
    const auto w = fixture3();
    // Paths 0->3: direct 1, 0-1-3 2, 0-2-3 6, 0-1-2-3 3.
    CHECK(passage_from(w, 0)[3] == 6.0);
    CHECK(brute_force_passage(w, 0, 3) == 6.0);
    const auto g = geodesic(w, 0, 3);
    CHECK(g.value == 6.0);
    CHECK(g.path == std::vector<std::pair<Vertex, Vertex>>{{0, 2}, {2, 3}});
    CHECK(g.ell == 2);
    CHECK(g.h == 5.0);
    CHECK(passage_excluding_direct(w, 0, 3) == 6.0);
  }

  TEST_CASE("unreachable targets") {
    const std::vector<Edge> e{{0, 1, 1.0}};
    const auto w = GraphWindow::materialized(2, e);
    CHECK_FALSE(passage_from(w, 0)[2].has_value());
    const auto g = geodesic(w, 0, 2);
    CHECK_FALSE(g.reachable());
    CHECK(g.path.empty());
    const std::vector<Edge> only_direct{{0, 2, 3.0}};
    CHECK_FALSE(passage_excluding_direct(GraphWindow::materialized(2, only_direct), 0, 2));
  }

  TEST_CASE("geodesic single edge and unit chain") {
    const std::vector<Edge> e{{0, 1, 7.0}};
    const auto g = geodesic(GraphWindow::materialized(1, e), 0, 1);
    CHECK(g.value == 7.0);
    CHECK(g.ell == 1);
    CHECK(g.h == 7.0);
    const auto u = generate_window(40, PModel::constant(1), WeightDistribution::constant(1), 1);
    const auto gu = geodesic(u, 0, 40);
    CHECK(gu.value == 40.0);
    CHECK(gu.path.size() == 40);
    CHECK(gu.ell == 1);
    CHECK(gu.h == 1.0);
    CHECK(passage_excluding_direct(u, 0, 4) == 4.0);
  }

  TEST_CASE("ties prefer the smallest predecessor") {
    // 0->2 directly (2) ties with 0->1->2 (1+1); target 3 via 2.
    const std::vector<Edge> e{{0, 1, 1}, {1, 2, 1}, {0, 2, 2}, {2, 3, 1}, {1, 3, 2}};
    const auto g = geodesic(GraphWindow::materialized(3, e), 0, 3);
    CHECK(g.value == 3.0);
    CHECK(g.path == std::vector<std::pair<Vertex, Vertex>>{{0, 1}, {1, 3}});
  }

  TEST_CASE("brute force guard") {
    const auto w = generate_window(30, PModel::constant(1), WeightDistribution::constant(1), 1);
    CHECK_THROWS_AS(brute_force_passage(w, 0, 21), GuardError);
    CHECK(brute_force_passage(w, 0, 12) == 12.0);
    CHECK_THROWS_AS(geodesic(w, 3, 3), DomainError);
  }

  TEST_CASE("dynamic program equals enumeration on random windows") {
    std::mt19937_64 rng(2024);
    int windows = 0;
    for (double p : {0.4, 1.0}) {
      for (int rep = 0; rep < 500; ++rep) {
        const Vertex n = 1 + static_cast<Vertex>(rng() % 12);
        const auto w = random_window(rng, n, p);
        for (Vertex i = 0; i <= n; ++i) {
          const auto W = passage_from(w, i);
          for (Vertex j = i + 1; j <= n; ++j) {
            REQUIRE(W[static_cast<std::size_t>(j - i)] == brute_force_passage(w, i, j));
          }
        }
        ++windows;
      }
    }
    CHECK(windows == 1000);
  }

  TEST_CASE("excluding the direct edge matches enumeration without it") {
    std::mt19937_64 rng(7);
    for (int rep = 0; rep < 200; ++rep) {
      const Vertex n = 2 + static_cast<Vertex>(rng() % 9);
      const auto w = random_window(rng, n, 0.6);
      std::vector<Edge> edges = w.present_edges();
      for (Vertex i = 0; i < n; ++i) {
        for (Vertex j = i + 1; j <= n; ++j) {
          std::vector<Edge> minus;
          for (const Edge& e : edges) {
            if (!(e.i == i && e.j == j)) minus.push_back(e);
          }
          const auto oracle = brute_force_passage(GraphWindow::materialized(n, minus), i, j);
          REQUIRE(passage_excluding_direct(w, i, j) == oracle);
        }
      }
    }
  }

  TEST_CASE("superadditivity and nearest-neighbour bound at p = 1") {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
      const auto w =
          generate_window(150, PModel::constant(1), WeightDistribution::pareto(2.5), seed);
      const auto from0 = passage_from(w, 0);
      const double total = *from0[150];
      double chain = 0.0;
      for (Vertex k = 0; k < 150; ++k) chain += *w.edge_weight(k, k + 1);
      CHECK(total >= chain);
      for (Vertex m = 1; m < 150; ++m) {
        const double right = *passage_from(w, m)[static_cast<std::size_t>(150 - m)];
        REQUIRE(*from0[static_cast<std::size_t>(m)] + right <= total * (1 + 1e-15));
      }
    }
  }

  TEST_CASE("raising one edge never lowers any passage value") {
    std::mt19937_64 rng(99);
    for (int rep = 0; rep < 100; ++rep) {
      const Vertex n = 3 + static_cast<Vertex>(rng() % 8);
      const auto w = random_window(rng, n, 0.7);
      std::vector<Edge> edges = w.present_edges();
      if (edges.empty()) continue;
      edges[rng() % edges.size()].weight += 0.5 + static_cast<double>(rng() % 3);
      const auto bumped = GraphWindow::materialized(n, edges);
      for (Vertex i = 0; i < n; ++i) {
        const auto a = passage_from(w, i);
        const auto b = passage_from(bumped, i);
        for (std::size_t k = 1; k < a.size(); ++k) {
          if (a[k]) {
            REQUIRE(b[k].has_value());
            REQUIRE(*b[k] >= *a[k]);
          }
        }
      }
    }
  }

  TEST_CASE("geodesic invariants") {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
      const auto w =
          generate_window(300, PModel::constant(0.5), WeightDistribution::exponential(1), seed);
      const auto g = geodesic(w, 0, 300);
      if (!g.reachable()) continue;
      double sum = 0.0;
      Vertex ell = 0;
      double h = 0.0;
      Vertex prev = 0;
      for (const auto& [a, b] : g.path) {
        REQUIRE(a == prev);
        REQUIRE(b > a);
        const auto v = w.edge_weight(a, b);
        REQUIRE(v.has_value());
        sum += *v;
        ell = std::max(ell, b - a);
        h = std::max(h, *v);
        prev = b;
      }
      CHECK(prev == 300);
      CHECK(std::abs(sum - *g.value) <= 1e-12 * *g.value);
      CHECK(g.ell == ell);
      CHECK(g.h == h);
    }
  }

  TEST_CASE("passage oracle matches per-source dynamic programs") {
    const auto w = generate_window(120, PModel::constant(0.7), WeightDistribution::uniform(0, 2), 4);
    const PassageOracle oracle(w, 10, 110);
    CHECK(oracle.cached());
    for (Vertex a = 10; a <= 110; a += 7) {
      const auto W = forward_table(w, a, 110).value;
      for (Vertex b = a; b <= 110; ++b) {
        REQUIRE(oracle.raw(a, b) == W[static_cast<std::size_t>(b - a)]);
      }
    }
    const auto big = generate_window(4100, PModel::constant(1), WeightDistribution::exponential(1), 4);
    const PassageOracle lazy(big, 4000, 4100);
    CHECK_FALSE(lazy.cached());
    const auto W = passage_from(big, 4000);
    CHECK(lazy.at(4000, 4100) == W[100]);
    CHECK(lazy.at(4000, 4050) == W[50]);
  }
}
