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

// AVX2 variants of the passage kernels, four edges per vector. Outputs are
// bit-identical to the scalar reference in lpp/detail/edge_ref.hpp.

#include <immintrin.h>

#include <limits>

#include "lpp/detail/fastmath.hpp"
#include "lpp/kernels.hpp"
#include "lpp/philox.hpp"

namespace lpp::kernels {
namespace {

using detail::kOneBits;

struct Block {
  __m256i c0, c1, c2, c3;
};

inline Block philox(Block c, std::uint32_t k0, std::uint32_t k1) {
  const __m256i m0 = _mm256_set1_epi64x(Philox4x32::kMul0);
  const __m256i m1 = _mm256_set1_epi64x(Philox4x32::kMul1);
  const __m256i low = _mm256_set1_epi64x(0xFFFFFFFFll);
  for (int r = 0; r < Philox4x32::kRounds; ++r) {
    if (r > 0) {
      k0 += Philox4x32::kWeyl0;
      k1 += Philox4x32::kWeyl1;
    }
    const __m256i key0 = _mm256_set1_epi64x(k0);
    const __m256i key1 = _mm256_set1_epi64x(k1);
    const __m256i p0 = _mm256_mul_epu32(c.c0, m0);
    const __m256i p1 = _mm256_mul_epu32(c.c2, m1);
    c = Block{_mm256_xor_si256(_mm256_xor_si256(_mm256_srli_epi64(p1, 32), c.c1), key0),
              _mm256_and_si256(p1, low),
              _mm256_xor_si256(_mm256_xor_si256(_mm256_srli_epi64(p0, 32), c.c3), key1),
              _mm256_and_si256(p0, low)};
  }
  return c;
}

// open_uniform(join_words(lo, hi)) per lane.
inline __m256d open_uniform(__m256i lo, __m256i hi) {
  const __m256i top52 = _mm256_or_si256(_mm256_slli_epi64(hi, 20), _mm256_srli_epi64(lo, 12));
  const __m256d d = _mm256_castsi256_pd(
      _mm256_or_si256(top52, _mm256_set1_epi64x(static_cast<long long>(kOneBits))));
  return _mm256_sub_pd(d, _mm256_set1_pd(0.99999999999999988898));
}

inline __m256d log_v(__m256d x) {
  using namespace detail;
  const __m256i bits = _mm256_castpd_si256(x);
  __m256i e = _mm256_sub_epi64(_mm256_srli_epi64(bits, 52), _mm256_set1_epi64x(1023));
  const __m256i mant =
      _mm256_and_si256(bits, _mm256_set1_epi64x(static_cast<long long>(kMantissaMask)));
  const __m256d m1 = _mm256_castsi256_pd(
      _mm256_or_si256(mant, _mm256_set1_epi64x(static_cast<long long>(kOneBits))));
  const __m256d mh = _mm256_castsi256_pd(
      _mm256_or_si256(mant, _mm256_set1_epi64x(static_cast<long long>(kHalfBits))));
  const __m256d big = _mm256_cmp_pd(m1, _mm256_set1_pd(kSqrt2), _CMP_GT_OQ);
  const __m256d m = _mm256_blendv_pd(m1, mh, big);
  e = _mm256_sub_epi64(e, _mm256_castpd_si256(big));  // big lanes are -1
  const __m256d magic = _mm256_set1_pd(kRoundMagic);
  const __m256d dk =
      _mm256_sub_pd(_mm256_castsi256_pd(_mm256_add_epi64(e, _mm256_castpd_si256(magic))), magic);

  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d f = _mm256_sub_pd(m, one);
  const __m256d s = _mm256_div_pd(f, _mm256_add_pd(_mm256_set1_pd(2.0), f));
  const __m256d z = _mm256_mul_pd(s, s);
  const __m256d w = _mm256_mul_pd(z, z);
  const __m256d t1 = _mm256_mul_pd(
      w, _mm256_add_pd(_mm256_set1_pd(kLg2),
                       _mm256_mul_pd(w, _mm256_add_pd(_mm256_set1_pd(kLg4),
                                                      _mm256_mul_pd(w, _mm256_set1_pd(kLg6))))));
  const __m256d t2 = _mm256_mul_pd(
      z, _mm256_add_pd(
             _mm256_set1_pd(kLg1),
             _mm256_mul_pd(
                 w, _mm256_add_pd(_mm256_set1_pd(kLg3),
                                  _mm256_mul_pd(w, _mm256_add_pd(_mm256_set1_pd(kLg5),
                                                                 _mm256_mul_pd(w, _mm256_set1_pd(kLg7))))))));
  const __m256d r = _mm256_add_pd(t2, t1);
  const __m256d hfsq = _mm256_mul_pd(_mm256_mul_pd(_mm256_set1_pd(0.5), f), f);
  const __m256d inner = _mm256_add_pd(_mm256_mul_pd(s, _mm256_add_pd(hfsq, r)),
                                      _mm256_mul_pd(dk, _mm256_set1_pd(kLn2Lo)));
  return _mm256_sub_pd(_mm256_mul_pd(dk, _mm256_set1_pd(kLn2Hi)),
                       _mm256_sub_pd(_mm256_sub_pd(hfsq, inner), f));
}

inline __m256d exp_v(__m256d x) {
  using namespace detail;
  const __m256d magic = _mm256_set1_pd(kRoundMagic);
  const __m256d t = _mm256_add_pd(_mm256_mul_pd(x, _mm256_set1_pd(kInvLn2)), magic);
  const __m256d kd = _mm256_sub_pd(t, magic);
  const __m256i k = _mm256_sub_epi64(_mm256_castpd_si256(t), _mm256_castpd_si256(magic));
  const __m256d hi = _mm256_sub_pd(x, _mm256_mul_pd(kd, _mm256_set1_pd(kLn2Hi)));
  const __m256d lo = _mm256_mul_pd(kd, _mm256_set1_pd(kLn2Lo));
  const __m256d r = _mm256_sub_pd(hi, lo);
  const __m256d rr = _mm256_mul_pd(r, r);
  __m256d poly = _mm256_set1_pd(kP5);
  poly = _mm256_add_pd(_mm256_set1_pd(kP4), _mm256_mul_pd(rr, poly));
  poly = _mm256_add_pd(_mm256_set1_pd(kP3), _mm256_mul_pd(rr, poly));
  poly = _mm256_add_pd(_mm256_set1_pd(kP2), _mm256_mul_pd(rr, poly));
  poly = _mm256_add_pd(_mm256_set1_pd(kP1), _mm256_mul_pd(rr, poly));
  const __m256d c = _mm256_sub_pd(r, _mm256_mul_pd(rr, poly));
  const __m256d q = _mm256_div_pd(_mm256_mul_pd(r, c), _mm256_sub_pd(_mm256_set1_pd(2.0), c));
  const __m256d y = _mm256_sub_pd(_mm256_set1_pd(1.0), _mm256_sub_pd(_mm256_sub_pd(lo, q), hi));

  const __m256i k1 = _mm256_sub_epi64(
      _mm256_srli_epi64(_mm256_add_epi64(k, _mm256_set1_epi64x(2048)), 1), _mm256_set1_epi64x(1024));
  const __m256i k2 = _mm256_sub_epi64(k, k1);
  const __m256i bias = _mm256_set1_epi64x(1023);
  const __m256d s1 = _mm256_castsi256_pd(_mm256_slli_epi64(_mm256_add_epi64(k1, bias), 52));
  const __m256d s2 = _mm256_castsi256_pd(_mm256_slli_epi64(_mm256_add_epi64(k2, bias), 52));
  __m256d res = _mm256_mul_pd(_mm256_mul_pd(y, s1), s2);

  const __m256d over = _mm256_cmp_pd(x, _mm256_set1_pd(kExpOverflow), _CMP_GT_OQ);
  const __m256d under = _mm256_cmp_pd(x, _mm256_set1_pd(kExpUnderflow), _CMP_LT_OQ);
  res = _mm256_blendv_pd(res, _mm256_set1_pd(std::numeric_limits<double>::infinity()), over);
  return _mm256_blendv_pd(res, _mm256_setzero_pd(), under);
}

inline __m256d transform(const EdgeStream& es, __m256d u) {
  switch (es.law) {
    case WeightLaw::kConstant:
      return _mm256_set1_pd(es.a);
    case WeightLaw::kUniform:
      return _mm256_add_pd(_mm256_set1_pd(es.a), _mm256_mul_pd(_mm256_set1_pd(es.b), u));
    case WeightLaw::kExponential:
      return _mm256_mul_pd(log_v(_mm256_sub_pd(_mm256_set1_pd(1.0), u)), _mm256_set1_pd(es.a));
    case WeightLaw::kPareto:
      return exp_v(_mm256_mul_pd(log_v(_mm256_sub_pd(_mm256_set1_pd(1.0), u)),
                                 _mm256_set1_pd(es.a)));
    case WeightLaw::kTabulated: {
      alignas(32) double lanes[4];
      _mm256_store_pd(lanes, u);
      for (double& x : lanes) x = sample_tabulated(es, x);
      return _mm256_load_pd(lanes);
    }
  }
  return _mm256_set1_pd(es.a);
}

// presence_p holds the thresholds in lane order.
inline __m256d edges(const EdgeStream& es, const Block& ctr, __m256d presence_p) {
  const Block out = philox(ctr, es.key0, es.key1);
  const __m256d w = transform(es, open_uniform(out.c2, out.c3));
  if (es.presence == nullptr) return w;
  const __m256d up = open_uniform(out.c0, out.c1);
  const __m256d present = _mm256_cmp_pd(up, presence_p, _CMP_LT_OQ);
  return _mm256_blendv_pd(_mm256_set1_pd(-std::numeric_limits<double>::infinity()), w, present);
}

void fill_row(const EdgeStream& es, std::uint32_t i, std::uint32_t j0, std::size_t count,
              double* out) {
  const __m256i zero = _mm256_setzero_si256();
  const __m256i row = _mm256_set1_epi64x(i);
  const __m256i step = _mm256_set_epi64x(3, 2, 1, 0);
  std::size_t k = 0;
  for (; k + 4 <= count; k += 4) {
    const std::uint32_t j = j0 + static_cast<std::uint32_t>(k);
    const Block ctr{row, _mm256_add_epi64(_mm256_set1_epi64x(j), step), zero, zero};
    const __m256d p = es.presence ? _mm256_loadu_pd(es.presence + (j - i)) : _mm256_setzero_pd();
    _mm256_storeu_pd(out + k, edges(es, ctr, p));
  }
  for (; k < count; ++k) out[k] = edge_reference(es, i, j0 + static_cast<std::uint32_t>(k));
}

void fill_col(const EdgeStream& es, std::uint32_t j, std::uint32_t i0, std::size_t count,
              double* out) {
  const __m256i zero = _mm256_setzero_si256();
  const __m256i col = _mm256_set1_epi64x(j);
  const __m256i step = _mm256_set_epi64x(3, 2, 1, 0);
  std::size_t k = 0;
  for (; k + 4 <= count; k += 4) {
    const std::uint32_t i = i0 + static_cast<std::uint32_t>(k);
    const Block ctr{_mm256_add_epi64(_mm256_set1_epi64x(i), step), col, zero, zero};
    __m256d p = _mm256_setzero_pd();
    if (es.presence) {
      // Lane t has length j - i - t.
      p = _mm256_permute4x64_pd(_mm256_loadu_pd(es.presence + (j - i - 3)), 0x1B);
    }
    _mm256_storeu_pd(out + k, edges(es, ctr, p));
  }
  for (; k < count; ++k) out[k] = edge_reference(es, i0 + static_cast<std::uint32_t>(k), j);
}

void relax_push(double* value, std::int32_t* pred, double base, const double* w,
                std::size_t count, std::int32_t pred_id) {
  const __m256d vb = _mm256_set1_pd(base);
  const __m256i id = _mm256_set1_epi32(pred_id);
  const __m256i odd = _mm256_setr_epi32(1, 3, 5, 7, 1, 3, 5, 7);
  std::size_t k = 0;
  for (; k + 4 <= count; k += 4) {
    const __m256d cand = _mm256_add_pd(vb, _mm256_loadu_pd(w + k));
    const __m256d cur = _mm256_loadu_pd(value + k);
    const __m256d gt = _mm256_cmp_pd(cand, cur, _CMP_GT_OQ);
    if (_mm256_movemask_pd(gt) == 0) continue;
    _mm256_storeu_pd(value + k, _mm256_blendv_pd(cur, cand, gt));
    const __m128i mask32 =
        _mm256_castsi256_si128(_mm256_permutevar8x32_epi32(_mm256_castpd_si256(gt), odd));
    _mm_maskstore_epi32(pred + k, mask32, _mm256_castsi256_si128(id));
  }
  for (; k < count; ++k) {
    const double cand = base + w[k];
    if (cand > value[k]) {
      value[k] = cand;
      pred[k] = pred_id;
    }
  }
}

double max_plus(const double* a, const double* b, std::size_t count) {
  __m256d best = _mm256_set1_pd(-std::numeric_limits<double>::infinity());
  std::size_t k = 0;
  for (; k + 4 <= count; k += 4) {
    best = _mm256_max_pd(best, _mm256_add_pd(_mm256_loadu_pd(a + k), _mm256_loadu_pd(b + k)));
  }
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, best);
  double out = lanes[0];
  for (int t = 1; t < 4; ++t) out = lanes[t] > out ? lanes[t] : out;
  for (; k < count; ++k) {
    const double cand = a[k] + b[k];
    if (cand > out) out = cand;
  }
  return out;
}

}  // namespace

const KernelTable* avx2_table() {
  static const KernelTable table{"avx2", fill_row, fill_col, relax_push, max_plus};
  static const bool supported = __builtin_cpu_supports("avx2");
  return supported ? &table : nullptr;
}

}  // namespace lpp::kernels
