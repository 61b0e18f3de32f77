#pragma once

// Independent ground truth for small instances: closed forms, nested
// Gauss-Kronrod quadrature, and crude Monte Carlo on a truncated sum. Used by
// the test suites and by `tailsum validate`; none of it shares code with the
// estimators it checks.

#include <cstddef>
#include <cstdint>
#include <string_view>

#include "tailsum/coefficients.hpp"
#include "tailsum/distribution.hpp"

namespace tailsum::oracle {

enum class Method { ClosedForm, Quadrature, PlainMC };

std::string_view method_name(Method m) noexcept;

struct OracleResult {
  double value = 0.0;
  Method method = Method::ClosedForm;
  /// Absolute error bound: the quadrature's error estimate, or 4 standard
  /// errors for plain Monte Carlo.
  double error_bound = 0.0;
  /// Plain MC with fewer than two replications: no error estimate exists.
  bool degenerate = false;
  /// Plain MC only: sum_{i>m} a_i E|X|, a bound on E|S - S_m|.
  double truncation_remainder = 0.0;
  /// Plain MC only: the standard error behind error_bound.
  double std_error = 0.0;
};

/// P{S_1 > b} = F̄(b / a_1).
OracleResult tail_s1(double b, const Distribution& dist, const CoefficientSequence& seq);

/// P{S_n > b} for n in {2, 3} by nested quadrature (n = 1 falls back to the
/// closed form). Throws std::invalid_argument for other n.
OracleResult tail_sn_quadrature(std::size_t n, double b, const Distribution& dist,
                                const CoefficientSequence& seq);

/// P{S_k > b, Max_n = j}, where k = n if `full_sum` and n - 1 otherwise,
/// and Max_n is the index of the largest a_i X_i, i <= n. The outer integral
/// runs over the maximal increment, so this route never conditions on the
/// other increments the way the local estimators do.
OracleResult joint_with_max(std::size_t n, std::size_t j, bool full_sum, double b,
                            const Distribution& dist, const CoefficientSequence& seq);

/// p_1(n,b) = P{S_n > b, Max_n = n} - P{S_{n-1} > b, Max_n = n} and
/// p_2(n,b) = sum_{j<n} [P{S_n > b, Max_n = j} - P{S_{n-1} > b, Max_n = j}],
/// for n in {2, 3}.
struct LocalPartition {
  OracleResult p1;
  OracleResult p2;
};
LocalPartition local_partition(std::size_t n, double b, const Distribution& dist,
                               const CoefficientSequence& seq);

/// E|X|.
double mean_abs(const Distribution& dist) noexcept;

/// sum_{i>m} a_i E|X|.
double truncation_remainder_bound(std::size_t m, const Distribution& dist,
                                  const CoefficientSequence& seq);

/// Crude Monte Carlo estimate of P{S_m > b} from `replications` draws using
/// plain scalar std::pow sampling. Replication i uses
/// Rng::substream(seed, stream, i).
OracleResult tail_trunc_plain_mc(std::size_t m, double b, const Distribution& dist,
                                 const CoefficientSequence& seq, std::uint64_t replications,
                                 std::uint64_t seed, std::uint64_t stream = 0);

}  // namespace tailsum::oracle
