#include <immintrin.h>

#include <algorithm>
#include <limits>

#include "detail.hpp"

namespace tailsum::kernels::avx2 {
namespace {

inline __m256d log_positive(__m256d x) {
  using namespace detail;
  const __m256i bits = _mm256_castpd_si256(x);
  const __m256d biased = _mm256_sub_pd(
      _mm256_castsi256_pd(_mm256_or_si256(_mm256_srli_epi64(bits, 52),
                                          _mm256_set1_epi64x(0x4330000000000000LL))),
      _mm256_set1_pd(0x1.0p52));
  __m256d m = _mm256_castsi256_pd(
      _mm256_or_si256(_mm256_and_si256(bits, _mm256_set1_epi64x(kMantissaMask)),
                      _mm256_set1_epi64x(kOneBits)));
  __m256d e = _mm256_sub_pd(biased, _mm256_set1_pd(1023.0));
  const __m256d big = _mm256_cmp_pd(m, _mm256_set1_pd(kSqrt2), _CMP_GT_OQ);
  m = _mm256_blendv_pd(m, _mm256_mul_pd(m, _mm256_set1_pd(0.5)), big);
  e = _mm256_blendv_pd(e, _mm256_add_pd(e, _mm256_set1_pd(1.0)), big);

  const __m256d f = _mm256_sub_pd(m, _mm256_set1_pd(1.0));
  const __m256d hfsq = _mm256_mul_pd(_mm256_mul_pd(_mm256_set1_pd(0.5), f), f);
  const __m256d s = _mm256_div_pd(f, _mm256_add_pd(_mm256_set1_pd(2.0), f));
  const __m256d z = _mm256_mul_pd(s, s);
  const __m256d w = _mm256_mul_pd(z, z);
  auto lin = [](__m256d acc, __m256d var, double c) {
    return _mm256_add_pd(_mm256_set1_pd(c), _mm256_mul_pd(var, acc));
  };
  // t1 = w*(Lg2 + w*(Lg4 + w*Lg6))
  __m256d t1 = _mm256_mul_pd(w, _mm256_set1_pd(kLg6));
  t1 = _mm256_add_pd(_mm256_set1_pd(kLg4), t1);
  t1 = lin(t1, w, kLg2);
  t1 = _mm256_mul_pd(w, t1);
  // t2 = z*(Lg1 + w*(Lg3 + w*(Lg5 + w*Lg7)))
  __m256d t2 = _mm256_mul_pd(w, _mm256_set1_pd(kLg7));
  t2 = _mm256_add_pd(_mm256_set1_pd(kLg5), t2);
  t2 = lin(t2, w, kLg3);
  t2 = lin(t2, w, kLg1);
  t2 = _mm256_mul_pd(z, t2);
  const __m256d r = _mm256_add_pd(t2, t1);

  const __m256d inner = _mm256_add_pd(_mm256_mul_pd(s, _mm256_add_pd(hfsq, r)),
                                      _mm256_mul_pd(e, _mm256_set1_pd(kLn2Lo)));
  return _mm256_sub_pd(_mm256_mul_pd(e, _mm256_set1_pd(kLn2Hi)),
                       _mm256_sub_pd(_mm256_sub_pd(hfsq, inner), f));
}

inline __m256d exp_bounded(__m256d y) {
  using namespace detail;
  const __m256d k = _mm256_round_pd(_mm256_mul_pd(y, _mm256_set1_pd(kInvLn2)),
                                    _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
  const __m256d hi = _mm256_sub_pd(y, _mm256_mul_pd(k, _mm256_set1_pd(kLn2Hi)));
  const __m256d lo = _mm256_mul_pd(k, _mm256_set1_pd(kLn2Lo));
  const __m256d r = _mm256_sub_pd(hi, lo);
  const __m256d t = _mm256_mul_pd(r, r);
  __m256d p = _mm256_mul_pd(t, _mm256_set1_pd(kP5));
  p = _mm256_add_pd(_mm256_set1_pd(kP4), p);
  p = _mm256_add_pd(_mm256_set1_pd(kP3), _mm256_mul_pd(t, p));
  p = _mm256_add_pd(_mm256_set1_pd(kP2), _mm256_mul_pd(t, p));
  p = _mm256_add_pd(_mm256_set1_pd(kP1), _mm256_mul_pd(t, p));
  const __m256d c = _mm256_sub_pd(r, _mm256_mul_pd(t, p));
  const __m256d ratio = _mm256_div_pd(_mm256_mul_pd(r, c),
                                      _mm256_sub_pd(_mm256_set1_pd(2.0), c));
  const __m256d er = _mm256_sub_pd(_mm256_set1_pd(1.0),
                                   _mm256_sub_pd(_mm256_sub_pd(lo, ratio), hi));
  const __m256d magic = _mm256_add_pd(_mm256_add_pd(k, _mm256_set1_pd(1023.0)),
                                      _mm256_set1_pd(kExpMagic));
  const __m256d scale = _mm256_castsi256_pd(_mm256_slli_epi64(_mm256_castpd_si256(magic), 52));
  return _mm256_mul_pd(er, scale);
}

}  // namespace

void pareto_quantiles(std::span<const double> u, double alpha, double shift,
                      std::span<double> out) {
  const double neg_inv_alpha = -1.0 / alpha;
  const std::size_t n = std::min(u.size(), out.size());
  const __m256d vk = _mm256_set1_pd(neg_inv_alpha);
  const __m256d vshift = _mm256_set1_pd(shift);
  std::size_t i = 0;
  for (; i + detail::kLanes <= n; i += detail::kLanes) {
    const __m256d y = _mm256_mul_pd(log_positive(_mm256_loadu_pd(u.data() + i)), vk);
    _mm256_storeu_pd(out.data() + i, _mm256_sub_pd(exp_bounded(y), vshift));
  }
  for (; i < n; ++i) {
    out[i] = detail::exp_bounded(detail::log_positive(u[i]) * neg_inv_alpha) - shift;
  }
}

SumMax weighted_sum_max(std::span<const double> w, std::span<const double> x) {
  const std::size_t n = std::min(w.size(), x.size());
  __m256d acc = _mm256_setzero_pd();
  __m256d mx = _mm256_set1_pd(-std::numeric_limits<double>::infinity());
  std::size_t i = 0;
  for (; i + detail::kLanes <= n; i += detail::kLanes) {
    const __m256d p = _mm256_mul_pd(_mm256_loadu_pd(w.data() + i),
                                    _mm256_loadu_pd(x.data() + i));
    acc = _mm256_add_pd(acc, p);
    // _mm256_max_pd(a, b) yields a where a > b, else b; matches lane_max.
    mx = _mm256_max_pd(mx, p);
  }
  double acc_lanes[detail::kLanes];
  double mx_lanes[detail::kLanes];
  _mm256_storeu_pd(acc_lanes, acc);
  _mm256_storeu_pd(mx_lanes, mx);
  return detail::finish_sum_max(acc_lanes, mx_lanes, w.data(), x.data(), i, n);
}

}  // namespace tailsum::kernels::avx2
