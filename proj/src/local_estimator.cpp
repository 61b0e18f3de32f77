#include "tailsum/local_estimator.hpp"

#include <algorithm>
#include <stdexcept>

#include "tailsum/kernels.hpp"

namespace tailsum {
namespace {

double z1_value(double b, double a_n, const Distribution& dist, kernels::SumMax head) {
  if (head.sum > b) return 0.0;
  return dist.tail(std::max(b - head.sum, head.max) / a_n);
}

// weights/draws hold the n-1 increments i != j in increasing index order; the
// last entry is index n.
double z2_value(double b, double a_j, double q, const Distribution& dist,
                std::span<const double> weights, std::span<const double> draws) {
  const std::size_t m = weights.size();
  const kernels::SumMax head = kernels::weighted_sum_max(weights.first(m - 1), draws.first(m - 1));
  const double last = weights[m - 1] * draws[m - 1];
  const double s_prev = head.sum;  // S_{n-1}^{(-J)}
  const double s_full = head.sum + last;  // S_n^{(-J)}
  const double max_other = std::max(head.max, last);  // M_n^{(-J)}
  const double z21 = dist.tail(std::max(b - s_full, max_other) / a_j);
  const double z22 = dist.tail(std::max(b - s_prev, max_other) / a_j);
  return (z21 - z22) / q;
}

}  // namespace

double selection_probability(std::size_t j, std::size_t n, const CoefficientSequence& seq) {
  if (n < 2 || j < 1 || j >= n) {
    throw std::invalid_argument("q(j, n) is defined for 1 <= j < n");
  }
  double total = 0.0;
  for (std::size_t i = 1; i < n; ++i) total += seq.coeff(i);
  return seq.coeff(j) / total;
}

double z1_from_increments(std::size_t n, double b, const Distribution& dist,
                          const CoefficientSequence& seq, std::span<const double> x) {
  if (n < 1) throw std::invalid_argument("level n must be >= 1");
  if (x.size() < n - 1) throw std::invalid_argument("z1 needs n - 1 increments");
  std::vector<double> a(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) a[i] = seq.coeff(i + 1);
  return z1_value(b, seq.coeff(n), dist, kernels::weighted_sum_max(a, x.first(n - 1)));
}

double z2_from_increments(std::size_t n, double b, std::size_t j, double q,
                          const Distribution& dist, const CoefficientSequence& seq,
                          std::span<const double> x) {
  if (n < 2 || j < 1 || j >= n) throw std::invalid_argument("z2 needs 1 <= j < n");
  if (x.size() < n) throw std::invalid_argument("z2 needs n increments");
  std::vector<double> w;
  std::vector<double> d;
  for (std::size_t i = 1; i <= n; ++i) {
    if (i == j) continue;
    w.push_back(seq.coeff(i));
    d.push_back(x[i - 1]);
  }
  return z2_value(b, seq.coeff(j), q, dist, w, d);
}

LocalEstimator::LocalEstimator(Distribution dist, CoefficientSequence seq)
    : dist_(dist), seq_(seq) {}

std::span<const double> LocalEstimator::coefficients(std::size_t n) {
  for (std::size_t i = coeffs_.size() + 1; i <= n; ++i) coeffs_.push_back(seq_.coeff(i));
  return std::span<const double>(coeffs_).first(n);
}

std::span<const double> LocalEstimator::draw_increments(std::size_t n, Rng& rng) {
  if (draws_.size() < n) draws_.resize(n);
  std::span<double> out(draws_.data(), n);
  dist_.sample(rng, out);
  return out;
}

LocalDraw LocalEstimator::estimator1(std::size_t n, double b, Rng& rng) {
  if (n < 1) throw std::invalid_argument("level n must be >= 1");
  const auto a = coefficients(n);
  if (n == 1) return {dist_.tail(b / a[0]), 0};
  const auto x = draw_increments(n - 1, rng);
  const double z = z1_value(b, a[n - 1], dist_, kernels::weighted_sum_max(a.first(n - 1), x));
  return {z, n - 1};
}

SelectedIndex LocalEstimator::sample_jn(std::size_t n, Rng& rng) {
  if (n < 2) throw std::invalid_argument("J_n is only defined for n >= 2");
  const auto a = coefficients(n);
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < n; ++i) total += a[i];
  const double target = rng.uniform() * total;
  double acc = 0.0;
  std::size_t j = n - 1;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    acc += a[i];
    if (target <= acc) {
      j = i + 1;
      break;
    }
  }
  return {j, a[j - 1] / total};
}

LocalDraw LocalEstimator::estimator2(std::size_t n, double b, Rng& rng) {
  if (n < 1) throw std::invalid_argument("level n must be >= 1");
  if (n == 1) return {0.0, 0};
  const SelectedIndex sel = sample_jn(n, rng);
  const auto a = coefficients(n);
  weights_.clear();
  for (std::size_t i = 1; i <= n; ++i) {
    if (i != sel.j) weights_.push_back(a[i - 1]);
  }
  const auto x = draw_increments(n - 1, rng);
  return {z2_value(b, a[sel.j - 1], sel.q, dist_, weights_, x), n - 1};
}

LocalEstimate LocalEstimator::local_simulation(std::size_t n, double b, Rng& rng) {
  const LocalDraw d1 = estimator1(n, b, rng);
  const LocalDraw d2 = estimator2(n, b, rng);
  return {n, d1.value, d2.value, d1.value + d2.value, d1.work + d2.work};
}

}  // namespace tailsum
