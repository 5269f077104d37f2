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

// Scalar reference versions of the elementary functions used by the edge
// weight transform. The SIMD kernels replay exactly these operation
// sequences (no FMA, same constants, same rounding trick), so every lane
// result is bit-identical to the scalar one.

#include <bit>
#include <cstdint>
#include <limits>

namespace lpp::detail {

inline constexpr double kLn2Hi = 6.93147180369123816490e-01;
inline constexpr double kLn2Lo = 1.90821492927058770002e-10;
inline constexpr double kInvLn2 = 1.44269504088896338700e+00;
inline constexpr double kSqrt2 = 1.41421356237309514547e+00;
// 1.5 * 2^52: adding it rounds to the nearest integer in the low mantissa bits.
inline constexpr double kRoundMagic = 6755399441055744.0;
inline constexpr double kExpOverflow = 7.09782712893383973096e+02;
inline constexpr double kExpUnderflow = -7.08396418532264106224e+02;

inline constexpr double kLg1 = 6.666666666666735130e-01;
inline constexpr double kLg2 = 3.999999999940941908e-01;
inline constexpr double kLg3 = 2.857142874366239149e-01;
inline constexpr double kLg4 = 2.222219843214978396e-01;
inline constexpr double kLg5 = 1.818357216161805012e-01;
inline constexpr double kLg6 = 1.531383769920937332e-01;
inline constexpr double kLg7 = 1.479819860511658591e-01;

inline constexpr double kP1 = 1.66666666666666019037e-01;
inline constexpr double kP2 = -2.77777777770155933842e-03;
inline constexpr double kP3 = 6.61375632143793436117e-05;
inline constexpr double kP4 = -1.65339022054652515390e-06;
inline constexpr double kP5 = 4.13813679705723846039e-08;

inline constexpr std::uint64_t kMantissaMask = 0x000FFFFFFFFFFFFFull;
inline constexpr std::uint64_t kOneBits = 0x3FF0000000000000ull;
inline constexpr std::uint64_t kHalfBits = 0x3FE0000000000000ull;

// Natural log for positive normal x.
inline double log_ref(double x) {
  const auto bits = std::bit_cast<std::uint64_t>(x);
  std::int64_t e = static_cast<std::int64_t>(bits >> 52) - 1023;
  double m = std::bit_cast<double>((bits & kMantissaMask) | kOneBits);
  if (m > kSqrt2) {
    m = std::bit_cast<double>((bits & kMantissaMask) | kHalfBits);
    e += 1;
  }
  const double dk = static_cast<double>(e);
  const double f = m - 1.0;
  const double s = f / (2.0 + f);
  const double z = s * s;
  const double w = z * z;
  const double t1 = w * (kLg2 + w * (kLg4 + w * kLg6));
  const double t2 = z * (kLg1 + w * (kLg3 + w * (kLg5 + w * kLg7)));
  const double r = t2 + t1;
  const double hfsq = 0.5 * f * f;
  return dk * kLn2Hi - ((hfsq - (s * (hfsq + r) + dk * kLn2Lo)) - f);
}

inline double exp_ref(double x) {
  if (x > kExpOverflow) return std::numeric_limits<double>::infinity();
  if (x < kExpUnderflow) return 0.0;
  const double t = x * kInvLn2 + kRoundMagic;
  const double kd = t - kRoundMagic;
  const std::int64_t k = static_cast<std::int64_t>(std::bit_cast<std::uint64_t>(t) -
                                                   std::bit_cast<std::uint64_t>(kRoundMagic));
  const double hi = x - kd * kLn2Hi;
  const double lo = kd * kLn2Lo;
  const double r = hi - lo;
  const double rr = r * r;
  const double c = r - rr * (kP1 + rr * (kP2 + rr * (kP3 + rr * (kP4 + rr * kP5))));
  const double y = 1.0 - ((lo - (r * c) / (2.0 - c)) - hi);
  // Split the scale so k == 1024 (x just below the overflow bound) stays finite.
  const std::int64_t k1 = static_cast<std::int64_t>(static_cast<std::uint64_t>(k + 2048) >> 1) - 1024;
  const std::int64_t k2 = k - k1;
  const double s1 = std::bit_cast<double>(static_cast<std::uint64_t>(k1 + 1023) << 52);
  const double s2 = std::bit_cast<double>(static_cast<std::uint64_t>(k2 + 1023) << 52);
  return (y * s1) * s2;
}

// Uniform on (0,1) from 64 random bits: (k + 1/2) 2^-52 with k the top 52 bits.
// Never returns 0 or 1.
inline double open_uniform(std::uint64_t bits) {
  const double d = std::bit_cast<double>((bits >> 12) | kOneBits);
  return d - 0.99999999999999988898;  // 1 - 2^-53
}

}  // namespace lpp::detail
