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
#include <limits>
#include <optional>
#include <utility>
#include <vector>

#include "lpp/graph.hpp"

namespace lpp {

// Passage value w_{i,j}; nullopt when no directed path exists.
using PassageValue = std::optional<double>;

struct GeodesicReport {
  PassageValue value;
  std::vector<std::pair<Vertex, Vertex>> path;
  Vertex ell = 0;   // longest edge length on the path
  double h = 0.0;   // heaviest edge weight on the path
  bool reachable() const { return value.has_value(); }
};

// Raw forward DP from src over [src, end]. value[k] is the passage value to
// src + k (-inf when unreachable), pred[k] the predecessor vertex (-1 for
// none). Ties go to the smallest predecessor.
struct PassageTable {
  Vertex src = 0;
  std::vector<double> value;
  std::vector<std::int32_t> pred;
};

PassageTable forward_table(const GraphWindow& w, Vertex src, Vertex end);

// (w_{src,src}=0, w_{src,src+1}, ..., w_{src,n}).
std::vector<PassageValue> passage_from(const GraphWindow& w, Vertex src);

GeodesicReport geodesic(const GraphWindow& w, Vertex i, Vertex j);

// Best path from i to j that does not use the edge (i,j) itself.
PassageValue passage_excluding_direct(const GraphWindow& w, Vertex i, Vertex j);

// Depth-first enumeration of every increasing path; testing oracle for the
// DP. Refuses spans j - i > 20.
PassageValue brute_force_passage(const GraphWindow& w, Vertex i, Vertex j);

// w_{a,b} for every source a in [lo, hi] and target b in [a, hi]. Rows are
// precomputed when the window has n <= kCacheLimit and recomputed on demand
// (one row kept) above that.
class PassageOracle {
 public:
  static constexpr Vertex kCacheLimit = 4000;

  PassageOracle(const GraphWindow& w, Vertex lo, Vertex hi);

  // Raw value, -inf when unreachable.
  double raw(Vertex a, Vertex b) const;
  PassageValue at(Vertex a, Vertex b) const {
    const double v = raw(a, b);
    return v == -std::numeric_limits<double>::infinity() ? PassageValue{} : PassageValue{v};
  }
  bool cached() const { return cached_; }

 private:
  const GraphWindow* window_;
  Vertex lo_;
  Vertex hi_;
  bool cached_;
  std::vector<std::vector<double>> rows_;
  mutable Vertex current_src_ = -1;
  mutable std::vector<double> current_;
};

}  // namespace lpp
