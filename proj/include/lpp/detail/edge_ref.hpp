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

#include "lpp/detail/fastmath.hpp"
#include "lpp/distributions.hpp"
#include "lpp/kernels.hpp"
#include "lpp/philox.hpp"

namespace lpp::detail {

// Scalar definition of an edge: one Philox block keyed by the seed with
// counter (i, j, 0, 0). Words 0-1 drive presence, words 2-3 the weight.
inline double edge_ref(const kernels::EdgeStream& es, std::uint32_t i, std::uint32_t j) {
  const auto out = Philox4x32::apply({i, j, 0u, 0u}, {es.key0, es.key1});
  if (es.presence != nullptr) {
    const double up = open_uniform(join_words(out[0], out[1]));
    if (!(up < es.presence[j - i])) return -std::numeric_limits<double>::infinity();
  }
  const double u = open_uniform(join_words(out[2], out[3]));
  switch (es.law) {
    case kernels::WeightLaw::kConstant:
      return es.a;
    case kernels::WeightLaw::kUniform:
      return es.a + es.b * u;
    case kernels::WeightLaw::kExponential:
      return log_ref(1.0 - u) * es.a;
    case kernels::WeightLaw::kPareto:
      return exp_ref(log_ref(1.0 - u) * es.a);
    case kernels::WeightLaw::kTabulated:
      return es.dist->sample(u);
  }
  return es.a;
}

}  // namespace lpp::detail
