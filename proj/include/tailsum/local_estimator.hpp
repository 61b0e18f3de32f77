#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "tailsum/coefficients.hpp"
#include "tailsum/distribution.hpp"
#include "tailsum/random.hpp"

namespace tailsum {

/// One realization of a conditional estimator with the number of increments
/// it drew.
struct LocalDraw {
  double value;
  std::uint64_t work;
};

/// One realization of Z_loc(n, b) = z1 + z2, an unbiased estimate of
/// P{S_n > b} - P{S_{n-1} > b} where S_n = sum_{i<=n} a_i X_i.
struct LocalEstimate {
  std::size_t n;
  double z1;  ///< in [0, 1]
  double z2;  ///< may be negative
  double zloc;
  std::uint64_t work;  ///< increments drawn: 2n - 2
};

/// Realized index J_n and its selection probability q(J_n, n).
struct SelectedIndex {
  std::size_t j;
  double q;
};

/// q(j, n) = a_j / sum_{i<n} a_i for 1 <= j < n.
double selection_probability(std::size_t j, std::size_t n, const CoefficientSequence& seq);

/// z1 for given increments x = (X_1, ..., X_{n-1}):
///   F̄(((b - S_{n-1}) v M_{n-1}) / a_n) * 1{S_{n-1} <= b},
/// with S_0 = 0 and M_0 = -inf, so n = 1 gives F̄(b / a_1).
double z1_from_increments(std::size_t n, double b, const Distribution& dist,
                          const CoefficientSequence& seq, std::span<const double> x);

/// z2 for a realized J_n = j (with probability q) and increments
/// x = (X_1, ..., X_n); x[j-1] is ignored.
double z2_from_increments(std::size_t n, double b, std::size_t j, double q,
                          const Distribution& dist, const CoefficientSequence& seq,
                          std::span<const double> x);

/// Samplers for the conditional local estimators. Holds scratch buffers, so
/// use one instance per thread; the draws themselves depend only on the
/// random stream passed in.
///
/// Estimator1 draws X_1..X_{n-1} and conditions on them. Estimator2 picks an
/// index J_n < n with probability proportional to a_j, draws every other
/// increment up to n, and conditions on the event that a_J X_J is the
/// largest one. The two use independent increments.
class LocalEstimator {
 public:
  LocalEstimator(Distribution dist, CoefficientSequence seq);

  const Distribution& distribution() const noexcept { return dist_; }
  const CoefficientSequence& sequence() const noexcept { return seq_; }

  LocalDraw estimator1(std::size_t n, double b, Rng& rng);
  /// Requires n >= 2.
  SelectedIndex sample_jn(std::size_t n, Rng& rng);
  /// Zero (without drawing) for n = 1: no increment below n can be maximal.
  LocalDraw estimator2(std::size_t n, double b, Rng& rng);
  LocalEstimate local_simulation(std::size_t n, double b, Rng& rng);

  /// a_1..a_n, served from a cache that grows on demand.
  std::span<const double> coefficients(std::size_t n);
  /// n i.i.d. increments in a scratch buffer valid until the next call.
  std::span<const double> draw_increments(std::size_t n, Rng& rng);

 private:
  Distribution dist_;
  CoefficientSequence seq_;
  std::vector<double> coeffs_;
  std::vector<double> draws_;
  std::vector<double> weights_;
};

}  // namespace tailsum
