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

// Inner loops of the passage computations. Each entry point has a scalar
// reference implementation and, where the CPU supports it, an AVX2 variant
// that produces bit-identical results. The active table is chosen once at
// startup (override with LPP_KERNEL=scalar|avx2).

#include <cstddef>
#include <cstdint>
#include <string_view>

namespace lpp {
class WeightDistribution;
}

namespace lpp::kernels {

enum class WeightLaw : std::uint8_t { kConstant, kUniform, kExponential, kPareto, kTabulated };

// Everything needed to evaluate v_{i,j} (or its absence) for a lazy window.
struct EdgeStream {
  std::uint32_t key0 = 0;
  std::uint32_t key1 = 0;
  // presence[len] = probability that an edge of length len exists; nullptr
  // means every edge exists.
  const double* presence = nullptr;
  WeightLaw law = WeightLaw::kConstant;
  double a = 0.0;
  double b = 0.0;
  const WeightDistribution* dist = nullptr;  // tabulated fallback
};

struct KernelTable {
  const char* name;
  // out[k] = v_{i, j0+k}, or -inf when the edge is absent.
  void (*fill_row)(const EdgeStream& es, std::uint32_t i, std::uint32_t j0, std::size_t count,
                   double* out);
  // out[k] = v_{i0+k, j}, or -inf when the edge is absent.
  void (*fill_col)(const EdgeStream& es, std::uint32_t j, std::uint32_t i0, std::size_t count,
                   double* out);
  // For each k: if base + w[k] > value[k] then value[k] = base + w[k] and
  // pred[k] = pred_id. Strict comparison keeps the earliest predecessor.
  void (*relax_push)(double* value, std::int32_t* pred, double base, const double* w,
                     std::size_t count, std::int32_t pred_id);
  // max_k (a[k] + b[k]); -inf for count == 0.
  double (*max_plus)(const double* a, const double* b, std::size_t count);
};

// Scalar definition of one edge (-inf when absent). Out of line so SIMD
// translation units can use it for loop tails without ODR hazards.
double edge_reference(const EdgeStream& es, std::uint32_t i, std::uint32_t j);
double sample_tabulated(const EdgeStream& es, double u);

const KernelTable& scalar_table();
// nullptr when the variant was not compiled in or the CPU lacks AVX2.
const KernelTable* avx2_table();

const KernelTable& active();
// "scalar", "avx2" or "auto". Returns false if the request cannot be honored.
// Not synchronized; switch kernels only while no computation is running.
bool select(std::string_view name);

}  // namespace lpp::kernels
