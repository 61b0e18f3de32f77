#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "tailsum/problem.hpp"

namespace tailsum {

/// Which single-draw estimator a run replicates.
///
///   Proposed:        Z(b) = Z_loc(N, b) / p_N
///   NaiveDebiased:   (1{S_N > b} - 1{S_{N-1} > b}) / p_N, same law for N
///   CrudeTruncated:  1{S_m > b} for a fixed truncation level m (biased)
struct EstimatorChoice {
  enum class Kind { Proposed, NaiveDebiased, CrudeTruncated };

  Kind kind = Kind::Proposed;
  std::size_t m = 0;  ///< truncation level, CrudeTruncated only

  static EstimatorChoice proposed() { return {Kind::Proposed, 0}; }
  static EstimatorChoice naive_debiased() { return {Kind::NaiveDebiased, 0}; }
  static EstimatorChoice crude_truncated(std::size_t m);

  std::string name() const;
};

/// Single-pass mean/variance (Welford) with the pairwise merge of Chan et al.
struct Moments {
  std::uint64_t count = 0;
  double mean = 0.0;
  double m2 = 0.0;

  void push(double x) noexcept;
  /// Sample variance; 0 for fewer than two values.
  double variance() const noexcept;
  static Moments merge(const Moments& a, const Moments& b) noexcept;
};

struct RunStats {
  std::uint64_t replications = 0;
  double mean = 0.0;
  double std_error = 0.0;  ///< sample std / sqrt(R)
  double cv = 0.0;         ///< sample std / |mean|; +inf when the mean is 0
  double mean_n = 0.0;     ///< average truncation level used
  std::uint64_t total_work = 0;
  double wall_seconds = 0.0;
};

struct RunOptions {
  /// Worker threads; 0 means std::thread::hardware_concurrency().
  unsigned threads = 1;
  /// Stream id mixed into every replication's random stream.
  std::uint64_t stream = 0;
};

/// Replications are grouped into fixed blocks of this size. Each block is
/// reduced sequentially and the blocks are merged in a fixed pairwise tree,
/// so results do not depend on the thread count.
inline constexpr std::size_t kReplicationBlock = 512;

/// Runs `replications` independent draws of `choice` for `problem`.
/// Replication i uses Rng::substream(seed, options.stream, i).
RunStats run(const EstimatorChoice& choice, const Problem& problem, double r,
             std::uint64_t replications, std::uint64_t seed, const RunOptions& options = {});

/// One run per threshold; run k uses stream options.stream + k.
std::vector<RunStats> sweep(const EstimatorChoice& choice, const Distribution& dist,
                            const CoefficientSequence& seq, std::span<const double> b_values,
                            double r, std::uint64_t replications, std::uint64_t seed,
                            const RunOptions& options = {});

/// Single-big-jump approximation F̄(b) * sum_n a_n^alpha.
double asymptotic(double b, const Distribution& dist, const CoefficientSequence& seq);

/// Required-replication proxy of crude Monte Carlo: sqrt((1 - p) / p).
double crude_cv(double p) noexcept;

}  // namespace tailsum
