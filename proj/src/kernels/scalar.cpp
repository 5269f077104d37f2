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

#include <limits>

#include "lpp/detail/edge_ref.hpp"
#include "lpp/kernels.hpp"

namespace lpp::kernels {
namespace {

void fill_row(const EdgeStream& es, std::uint32_t i, std::uint32_t j0, std::size_t count,
              double* out) {
  for (std::size_t k = 0; k < count; ++k) {
    out[k] = detail::edge_ref(es, i, j0 + static_cast<std::uint32_t>(k));
  }
}

void fill_col(const EdgeStream& es, std::uint32_t j, std::uint32_t i0, std::size_t count,
              double* out) {
  for (std::size_t k = 0; k < count; ++k) {
    out[k] = detail::edge_ref(es, i0 + static_cast<std::uint32_t>(k), j);
  }
}

void relax_push(double* value, std::int32_t* pred, double base, const double* w,
                std::size_t count, std::int32_t pred_id) {
  for (std::size_t k = 0; k < count; ++k) {
    const double cand = base + w[k];
    if (cand > value[k]) {
      value[k] = cand;
      pred[k] = pred_id;
    }
  }
}

double max_plus(const double* a, const double* b, std::size_t count) {
  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < count; ++k) {
    const double cand = a[k] + b[k];
    if (cand > best) best = cand;
  }
  return best;
}

}  // namespace

double edge_reference(const EdgeStream& es, std::uint32_t i, std::uint32_t j) {
  return detail::edge_ref(es, i, j);
}

double sample_tabulated(const EdgeStream& es, double u) { return es.dist->sample(u); }

const KernelTable& scalar_table() {
  static const KernelTable table{"scalar", fill_row, fill_col, relax_push, max_plus};
  return table;
}

}  // namespace lpp::kernels
