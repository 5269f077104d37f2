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

#include <cstdlib>
#include <string_view>

#include "lpp/kernels.hpp"

namespace lpp::kernels {

#if !defined(LPP_BUILD_AVX2)
const KernelTable* avx2_table() { return nullptr; }
#endif

namespace {

const KernelTable* auto_pick() {
  if (const char* env = std::getenv("LPP_KERNEL")) {
    std::string_view want(env);
    if (want == "scalar") return &scalar_table();
    if (want == "avx2" && avx2_table() != nullptr) return avx2_table();
  }
  if (const KernelTable* t = avx2_table()) return t;
  return &scalar_table();
}

const KernelTable*& current() {
  static const KernelTable* table = auto_pick();
  return table;
}

}  // namespace

const KernelTable& active() { return *current(); }

bool select(std::string_view name) {
  if (name == "scalar") {
    current() = &scalar_table();
    return true;
  }
  if (name == "avx2") {
    if (avx2_table() == nullptr) return false;
    current() = avx2_table();
    return true;
  }
  if (name == "auto") {
    current() = auto_pick();
    return true;
  }
  return false;
}

}  // namespace lpp::kernels
