#pragma once

#include <cstddef>
#include <cstdint>

#include "tailsum/coefficients.hpp"
#include "tailsum/local_estimator.hpp"
#include "tailsum/random.hpp"

namespace tailsum {

/// Law of the random truncation level N:
///
///   p_n = c_b (a_n^alpha + a_n / b^r),   c_b = 1 / (sum a_n^alpha + sum a_n / b^r).
///
/// p_n > 0 for every n, so no level is ever excluded and dividing a local
/// estimate by p_N keeps the final estimator unbiased. c_b is computed once
/// at construction.
class OuterLaw {
 public:
  OuterLaw(CoefficientSequence seq, double alpha, double b, double r = 1.0);

  double b() const noexcept { return b_; }
  double r() const noexcept { return r_; }
  double alpha() const noexcept { return alpha_; }
  const CoefficientSequence& sequence() const noexcept { return seq_; }
  /// c_b.
  double normalizer() const noexcept { return c_b_; }

  double pmf(std::size_t n) const;
  /// P{N <= n}.
  double cdf(std::size_t n) const { return 1.0 - survival(n); }
  /// P{N > n}, evaluated from tail sums of the weights rather than by
  /// accumulating the pmf.
  double survival(std::size_t n) const;
  /// Certified upper bound on P{N > n}.
  double survival_bound(std::size_t n) const;
  /// E[N] = c_b (sum n a_n^alpha + sum n a_n / b^r).
  double expected_level() const;

  /// Smallest n with cdf(n) >= u, for u in [0, 1). Sequential search over
  /// the infinite support; the expected number of steps is E[N].
  std::size_t level_for_uniform(double u) const;
  std::size_t sample_level(Rng& rng) const;

 private:
  CoefficientSequence seq_;
  double alpha_;
  double b_;
  double r_;
  double inv_b_pow_r_;
  double c_b_;
};

/// One draw of the final estimator Z(b) = Z_loc(N, b) / p_N.
struct Estimate {
  double z;
  std::size_t n;
  std::uint64_t work;  ///< increments drawn plus one for the level draw
  double zloc;
};

Estimate estimate_once(const OuterLaw& law, LocalEstimator& local, Rng& rng);

}  // namespace tailsum
