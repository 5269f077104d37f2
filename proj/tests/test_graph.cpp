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

#include <array>
#include <bit>
#include <cmath>
#include <random>
#include <thread>
#include <vector>

#include "lpp/errors.hpp"
#include "lpp/graph.hpp"
#include "lpp/kernels.hpp"

using namespace lpp;

TEST_SUITE("graph") {
  TEST_CASE("p = 1 constant unit weights") {
    const auto w = generate_window(3, PModel::constant(1), WeightDistribution::constant(1), 5);
    int edges = 0;
    for (Vertex i = 0; i < 3; ++i) {
      for (Vertex j = i + 1; j <= 3; ++j) {
        const auto v = edge_weight(w, i, j);
        REQUIRE(v.has_value());
        CHECK(*v == 1.0);
        ++edges;
      }
    }
    CHECK(edges == 6);
    CHECK(w.present_edges().size() == 6);
    CHECK(w.all_present());
  }

  TEST_CASE("invalid probabilities") {
    CHECK_THROWS_AS(PModel::constant(0.0), ConfigError);
    CHECK_THROWS_AS(PModel::constant(1.5), ConfigError);
    CHECK_THROWS_AS(PModel::per_length({0.5, -0.1}), ConfigError);
    CHECK_THROWS_AS(PModel::per_length({}), ConfigError);
    CHECK_THROWS_AS(generate_window(0, PModel::constant(1), WeightDistribution::constant(1), 1),
                    ConfigError);
    CHECK(PModel::per_length({0.5, 0.0}).first_length_condition());
    CHECK_FALSE(PModel::per_length({1.0, 0.3}).first_length_condition());
  }

  TEST_CASE("materialized fixtures") {
    const std::vector<Edge> edges{{0, 1, 2.5}};
    const auto w = GraphWindow::materialized(2, edges);
    CHECK(edge_weight(w, 0, 1) == 2.5);
    CHECK_FALSE(edge_weight(w, 0, 2).has_value());
    CHECK_FALSE(edge_weight(w, 1, 2).has_value());
    CHECK_THROWS_AS(edge_weight(w, 1, 1), DomainError);
    CHECK_THROWS_AS(edge_weight(w, 2, 1), DomainError);
    CHECK_THROWS_AS(edge_weight(w, 0, 3), DomainError);
    const std::vector<Edge> bad{{1, 0, 1.0}};
    CHECK_THROWS_AS(GraphWindow::materialized(2, bad), ConfigError);
  }

  TEST_CASE("query determinism across repeats, copies and threads") {
    const auto w = generate_window(10000, PModel::constant(1), WeightDistribution::pareto(1.5), 42);
    const double first = *edge_weight(w, 17, 9031);
    CHECK(*edge_weight(w, 17, 9031) == first);
    const auto again =
        generate_window(10000, PModel::constant(1), WeightDistribution::pareto(1.5), 42);
    CHECK(*edge_weight(again, 17, 9031) == first);
    std::vector<double> seen(4);
    std::vector<std::thread> pool;
    for (int t = 0; t < 4; ++t) {
      pool.emplace_back([&, t] {
        for (int r = 0; r < 100 * (t + 1); ++r) (void)edge_weight(w, r % 50, 60 + r);
        seen[static_cast<std::size_t>(t)] = *edge_weight(w, 17, 9031);
      });
    }
    for (auto& th : pool) th.join();
    for (double v : seen) CHECK(v == first);
  }

  TEST_CASE("full materializations of independent windows agree") {
    const auto a = generate_window(60, PModel::constant(0.4), WeightDistribution::exponential(1), 9);
    const auto b = generate_window(60, PModel::constant(0.4), WeightDistribution::exponential(1), 9);
    const auto ea = a.present_edges();
    const auto eb = b.present_edges();
    REQUIRE(ea.size() == eb.size());
    for (std::size_t k = 0; k < ea.size(); ++k) {
      CHECK(ea[k].i == eb[k].i);
      CHECK(ea[k].j == eb[k].j);
      CHECK(std::bit_cast<std::uint64_t>(ea[k].weight) == std::bit_cast<std::uint64_t>(eb[k].weight));
    }
    const auto m = a.to_materialized();
    for (Vertex i = 0; i < 60; ++i) {
      for (Vertex j = i + 1; j <= 60; ++j) REQUIRE(m.edge_weight(i, j) == a.edge_weight(i, j));
    }
  }

  TEST_CASE("presence frequency for p = 0.3") {
    std::size_t present = 0;
    std::size_t total = 0;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
      const auto w =
          generate_window(200, PModel::constant(0.3), WeightDistribution::exponential(1), seed);
      present += w.present_edges().size();
      total += 200 * 201 / 2;
    }
    const double frac = static_cast<double>(present) / static_cast<double>(total);
    CHECK(std::abs(frac - 0.3) < 0.01);
  }

  TEST_CASE("per-length presence follows p_{j-i}") {
    const auto pm = PModel::per_length({0.9, 0.5, 0.1});
    std::array<std::size_t, 5> hits{};
    std::array<std::size_t, 5> tries{};
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
      const auto w = generate_window(300, pm, WeightDistribution::uniform(0, 1), seed);
      for (Vertex i = 0; i < 295; ++i) {
        for (Vertex len = 1; len <= 4; ++len) {
          ++tries[static_cast<std::size_t>(len)];
          if (w.edge_weight(i, i + len)) ++hits[static_cast<std::size_t>(len)];
        }
      }
    }
    const std::array<double, 5> want{0.0, 0.9, 0.5, 0.1, 0.1};
    for (std::size_t len = 1; len <= 4; ++len) {
      const double f = static_cast<double>(hits[len]) / static_cast<double>(tries[len]);
      const double se = std::sqrt(want[len] * (1 - want[len]) / static_cast<double>(tries[len]));
      CHECK(std::abs(f - want[len]) < 5 * se);
    }
  }

  TEST_CASE("per-length constant table reproduces the constant model bit-exactly") {
    const auto a = generate_window(150, PModel::constant(0.45), WeightDistribution::pareto(2), 77);
    const auto b =
        generate_window(150, PModel::per_length({0.45}), WeightDistribution::pareto(2), 77);
    for (Vertex i = 0; i < 150; ++i) {
      for (Vertex j = i + 1; j <= 150; ++j) {
        const auto x = a.edge_weight(i, j);
        const auto y = b.edge_weight(i, j);
        REQUIRE(x.has_value() == y.has_value());
        if (x) REQUIRE(std::bit_cast<std::uint64_t>(*x) == std::bit_cast<std::uint64_t>(*y));
      }
    }
  }

  TEST_CASE("p = 1 windows never report absent edges") {
    const auto w =
        generate_window(1000000, PModel::constant(1), WeightDistribution::exponential(1), 3);
    std::mt19937_64 rng(8);
    for (int q = 0; q < 1000000; ++q) {
      Vertex i = static_cast<Vertex>(rng() % 1000000);
      Vertex j = static_cast<Vertex>(rng() % 1000001);
      if (i == j) continue;
      if (i > j) std::swap(i, j);
      REQUIRE(w.edge_weight(i, j).has_value());
    }
  }

  TEST_CASE("bulk row and column accessors agree with point queries under both kernels") {
    const auto w = generate_window(400, PModel::per_length({0.3, 0.7, 0.2}),
                                   WeightDistribution::pareto(1.5), 21);
    for (const char* name : {"scalar", "avx2"}) {
      if (!kernels::select(name)) continue;
      std::vector<double> row(300);
      w.fill_row(50, 60, row);
      for (std::size_t k = 0; k < row.size(); ++k) {
        const auto v = w.edge_weight(50, 60 + static_cast<Vertex>(k));
        CHECK(row[k] == (v ? *v : -INFINITY));
      }
      std::vector<double> col(250);
      w.fill_col(390, 100, col);
      for (std::size_t k = 0; k < col.size(); ++k) {
        const auto v = w.edge_weight(100 + static_cast<Vertex>(k), 390);
        CHECK(col[k] == (v ? *v : -INFINITY));
      }
    }
    kernels::select("auto");
  }
}
