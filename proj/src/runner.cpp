#include "tailsum/runner.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>
#include <thread>

#include "tailsum/kernels.hpp"
#include "tailsum/local_estimator.hpp"
#include "tailsum/outer_randomizer.hpp"

namespace tailsum {

EstimatorChoice EstimatorChoice::crude_truncated(std::size_t m) {
  if (m < 1) throw std::invalid_argument("crude truncation level m must be >= 1");
  return {Kind::CrudeTruncated, m};
}

std::string EstimatorChoice::name() const {
  switch (kind) {
    case Kind::Proposed:
      return "proposed";
    case Kind::NaiveDebiased:
      return "naive_debiased";
    case Kind::CrudeTruncated:
      return "crude(m=" + std::to_string(m) + ")";
  }
  return "unknown";
}

void Moments::push(double x) noexcept {
  ++count;
  const double delta = x - mean;
  mean += delta / static_cast<double>(count);
  m2 += delta * (x - mean);
}

double Moments::variance() const noexcept {
  return count > 1 ? m2 / static_cast<double>(count - 1) : 0.0;
}

Moments Moments::merge(const Moments& a, const Moments& b) noexcept {
  if (a.count == 0) return b;
  if (b.count == 0) return a;
  const double na = static_cast<double>(a.count);
  const double nb = static_cast<double>(b.count);
  const double n = na + nb;
  const double delta = b.mean - a.mean;
  Moments out;
  out.count = a.count + b.count;
  out.mean = a.mean + delta * (nb / n);
  out.m2 = a.m2 + b.m2 + delta * delta * (na * nb / n);
  return out;
}

namespace {

struct Partial {
  Moments z;
  std::uint64_t sum_n = 0;
  std::uint64_t work = 0;
};

Partial merge(const Partial& a, const Partial& b) {
  return {Moments::merge(a.z, b.z), a.sum_n + b.sum_n, a.work + b.work};
}

Partial merge_range(const std::vector<Partial>& parts, std::size_t lo, std::size_t hi) {
  if (hi - lo == 1) return parts[lo];
  const std::size_t mid = lo + (hi - lo) / 2;
  return merge(merge_range(parts, lo, mid), merge_range(parts, mid, hi));
}

// Per-thread state for one estimator.
class Replicator {
 public:
  Replicator(const EstimatorChoice& choice, const Problem& problem, const std::optional<OuterLaw>& law)
      : choice_(choice), problem_(problem), law_(law), local_(problem.dist, problem.seq) {}

  void draw(Rng& rng, Partial& out) {
    switch (choice_.kind) {
      case EstimatorChoice::Kind::Proposed: {
        const Estimate e = estimate_once(*law_, local_, rng);
        out.z.push(e.z);
        out.sum_n += e.n;
        out.work += e.work;
        return;
      }
      case EstimatorChoice::Kind::NaiveDebiased: {
        const std::size_t n = law_->sample_level(rng);
        const auto a = local_.coefficients(n);
        const auto x = local_.draw_increments(n, rng);
        const auto head = kernels::weighted_sum_max(a.first(n - 1), x.first(n - 1));
        const double s_prev = head.sum;
        const double s_full = head.sum + a[n - 1] * x[n - 1];
        const double diff = (s_full > problem_.b ? 1.0 : 0.0) - (s_prev > problem_.b ? 1.0 : 0.0);
        out.z.push(diff / law_->pmf(n));
        out.sum_n += n;
        out.work += n + 1;
        return;
      }
      case EstimatorChoice::Kind::CrudeTruncated: {
        const std::size_t m = choice_.m;
        const auto a = local_.coefficients(m);
        const auto x = local_.draw_increments(m, rng);
        const double s = kernels::weighted_sum_max(a, x).sum;
        out.z.push(s > problem_.b ? 1.0 : 0.0);
        out.sum_n += m;
        out.work += m;
        return;
      }
    }
  }

 private:
  const EstimatorChoice& choice_;
  const Problem& problem_;
  const std::optional<OuterLaw>& law_;
  LocalEstimator local_;
};

}  // namespace

RunStats run(const EstimatorChoice& choice, const Problem& problem, double r,
             std::uint64_t replications, std::uint64_t seed, const RunOptions& options) {
  if (replications < 2) throw std::invalid_argument("replications must be >= 2");
  if (!(problem.b > 0.0) || !std::isfinite(problem.b)) {
    throw std::invalid_argument("threshold b must be finite and > 0");
  }
  const auto start = std::chrono::steady_clock::now();

  std::optional<OuterLaw> law;
  if (choice.kind != EstimatorChoice::Kind::CrudeTruncated) {
    law.emplace(problem.seq, problem.dist.alpha(), problem.b, r);
  }

  const std::size_t blocks = (replications + kReplicationBlock - 1) / kReplicationBlock;
  std::vector<Partial> parts(blocks);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    Replicator rep(choice, problem, law);
    for (std::size_t blk = next.fetch_add(1); blk < blocks; blk = next.fetch_add(1)) {
      const std::uint64_t first = blk * kReplicationBlock;
      const std::uint64_t last = std::min<std::uint64_t>(first + kReplicationBlock, replications);
      Partial part;
      for (std::uint64_t i = first; i < last; ++i) {
        Rng rng = Rng::substream(seed, options.stream, i);
        rep.draw(rng, part);
      }
      parts[blk] = part;
    }
  };

  unsigned threads = options.threads == 0 ? std::max(1u, std::thread::hardware_concurrency())
                                          : options.threads;
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, blocks));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }

  const Partial total = merge_range(parts, 0, parts.size());
  RunStats stats;
  stats.replications = total.z.count;
  stats.mean = total.z.mean;
  const double sd = std::sqrt(total.z.variance());
  stats.std_error = sd / std::sqrt(static_cast<double>(total.z.count));
  stats.cv = stats.mean != 0.0 ? sd / std::abs(stats.mean)
                               : std::numeric_limits<double>::infinity();
  stats.mean_n = static_cast<double>(total.sum_n) / static_cast<double>(total.z.count);
  stats.total_work = total.work;
  stats.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return stats;
}

std::vector<RunStats> sweep(const EstimatorChoice& choice, const Distribution& dist,
                            const CoefficientSequence& seq, std::span<const double> b_values,
                            double r, std::uint64_t replications, std::uint64_t seed,
                            const RunOptions& options) {
  if (b_values.empty()) throw std::invalid_argument("sweep needs at least one threshold");
  std::vector<RunStats> out;
  out.reserve(b_values.size());
  for (std::size_t k = 0; k < b_values.size(); ++k) {
    RunOptions opts = options;
    opts.stream = options.stream + k;
    out.push_back(run(choice, Problem{dist, seq, b_values[k]}, r, replications, seed, opts));
  }
  return out;
}

double asymptotic(double b, const Distribution& dist, const CoefficientSequence& seq) {
  return dist.tail(b) * seq.sum_a_alpha(dist.alpha());
}

double crude_cv(double p) noexcept { return std::sqrt((1.0 - p) / p); }

}  // namespace tailsum
