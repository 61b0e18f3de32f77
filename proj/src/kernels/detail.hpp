#pragma once

// Shared pieces of the kernel variants. Everything here is written so that
// one scalar evaluation performs exactly the operations one SIMD lane does.

#include <bit>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>

#include "tailsum/kernels.hpp"

namespace tailsum::kernels::detail {

inline constexpr std::size_t kLanes = 4;

inline constexpr std::uint64_t kMantissaMask = 0x000fffffffffffffULL;
inline constexpr std::uint64_t kOneBits = 0x3ff0000000000000ULL;
inline constexpr double kSqrt2 = 1.41421356237309504880;
inline constexpr double kExpMagic = 0x1.8p52;

// log(1+f) minimax coefficients and split ln2 (fdlibm e_log.c).
inline constexpr double kLg1 = 6.666666666666735130e-01;
inline constexpr double kLg2 = 3.999999999940941908e-01;
inline constexpr double kLg3 = 2.857142874366239149e-01;
inline constexpr double kLg4 = 2.222219843214978396e-01;
inline constexpr double kLg5 = 1.818357216161805012e-01;
inline constexpr double kLg6 = 1.531383769920937332e-01;
inline constexpr double kLg7 = 1.479819860511658591e-01;
inline constexpr double kLn2Hi = 6.93147180369123816490e-01;
inline constexpr double kLn2Lo = 1.90821492927058770002e-10;

// exp remez coefficients (fdlibm e_exp.c).
inline constexpr double kP1 = 1.66666666666666019037e-01;
inline constexpr double kP2 = -2.77777777770155933842e-03;
inline constexpr double kP3 = 6.61375632143793436117e-05;
inline constexpr double kP4 = -1.65339022054652515390e-06;
inline constexpr double kP5 = 4.13813679705723846039e-08;
inline constexpr double kInvLn2 = 1.44269504088896338700e+00;

/// Natural log of a positive normal double.
inline double log_positive(double x) noexcept {
  const auto bits = std::bit_cast<std::uint64_t>(x);
  const double biased = std::bit_cast<double>((bits >> 52) | 0x4330000000000000ULL) -
                        0x1.0p52;
  double m = std::bit_cast<double>((bits & kMantissaMask) | kOneBits);
  double e = biased - 1023.0;
  if (m > kSqrt2) {
    m = m * 0.5;
    e = e + 1.0;
  }
  const double f = m - 1.0;
  const double hfsq = (0.5 * f) * f;
  const double s = f / (2.0 + f);
  const double z = s * s;
  const double w = z * z;
  const double t1 = w * (kLg2 + w * (kLg4 + w * kLg6));
  const double t2 = z * (kLg1 + w * (kLg3 + w * (kLg5 + w * kLg7)));
  const double r = t2 + t1;
  return e * kLn2Hi - ((hfsq - (s * (hfsq + r) + e * kLn2Lo)) - f);
}

/// exp(y) for y in [-700, 700].
inline double exp_bounded(double y) noexcept {
  const double k = std::nearbyint(y * kInvLn2);
  const double hi = y - k * kLn2Hi;
  const double lo = k * kLn2Lo;
  const double r = hi - lo;
  const double t = r * r;
  const double c = r - t * (kP1 + t * (kP2 + t * (kP3 + t * (kP4 + t * kP5))));
  const double er = 1.0 - ((lo - (r * c) / (2.0 - c)) - hi);
  const auto kbits = std::bit_cast<std::uint64_t>((k + 1023.0) + kExpMagic) << 52;
  return er * std::bit_cast<double>(kbits);
}

inline double lane_max(double a, double b) noexcept { return a > b ? a : b; }

/// Folds the unvectorized remainder into the lane accumulators, then reduces.
inline SumMax finish_sum_max(double (&acc)[kLanes], double (&mx)[kLanes],
                             const double* w, const double* x, std::size_t begin,
                             std::size_t end) noexcept {
  for (std::size_t i = begin; i < end; ++i) {
    const std::size_t lane = i % kLanes;
    const double p = w[i] * x[i];
    acc[lane] = acc[lane] + p;
    mx[lane] = lane_max(mx[lane], p);
  }
  return {(acc[0] + acc[1]) + (acc[2] + acc[3]),
          lane_max(lane_max(mx[0], mx[1]), lane_max(mx[2], mx[3]))};
}

}  // namespace tailsum::kernels::detail
