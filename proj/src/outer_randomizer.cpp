#include "tailsum/outer_randomizer.hpp"

#include <cmath>
#include <stdexcept>

namespace tailsum {

OuterLaw::OuterLaw(CoefficientSequence seq, double alpha, double b, double r)
    : seq_(seq), alpha_(alpha), b_(b), r_(r), inv_b_pow_r_(0.0), c_b_(0.0) {
  if (!(alpha > 2.0)) throw std::invalid_argument("tail index alpha must be > 2");
  if (!(b > 0.0) || !std::isfinite(b)) throw std::invalid_argument("threshold b must be > 0");
  if (!(r >= 0.0) || !std::isfinite(r)) throw std::invalid_argument("exponent r must be >= 0");
  inv_b_pow_r_ = std::pow(b, -r);
  c_b_ = 1.0 / (seq_.power_sum(alpha_).value + seq_.sum_a() * inv_b_pow_r_);
}

double OuterLaw::pmf(std::size_t n) const {
  const double a = seq_.coeff(n);
  return c_b_ * (std::pow(a, alpha_) + a * inv_b_pow_r_);
}

double OuterLaw::survival(std::size_t n) const {
  if (n == 0) return 1.0;
  return c_b_ * (seq_.power_tail(alpha_, n).value + seq_.power_tail(1.0, n).value * inv_b_pow_r_);
}

double OuterLaw::survival_bound(std::size_t n) const {
  if (n == 0) return 1.0;
  const CertifiedSum ta = seq_.power_tail(alpha_, n);
  const CertifiedSum t1 = seq_.power_tail(1.0, n);
  return c_b_ * ((ta.value + ta.error_bound) + (t1.value + t1.error_bound) * inv_b_pow_r_);
}

double OuterLaw::expected_level() const {
  return c_b_ * (seq_.weighted_power_sum(alpha_).value + seq_.sum_n_a() * inv_b_pow_r_);
}

std::size_t OuterLaw::level_for_uniform(double u) const {
  if (!(u >= 0.0 && u < 1.0)) throw std::invalid_argument("level uniform must lie in [0, 1)");
  const double upper = 1.0 - u;
  std::size_t n = 1;
  while (survival(n) > upper) ++n;
  return n;
}

std::size_t OuterLaw::sample_level(Rng& rng) const {
  // rng.uniform() is in (0, 1], so 1 - it is in [0, 1) and the survival
  // threshold stays strictly positive.
  return level_for_uniform(1.0 - rng.uniform());
}

Estimate estimate_once(const OuterLaw& law, LocalEstimator& local, Rng& rng) {
  const std::size_t n = law.sample_level(rng);
  const LocalEstimate loc = local.local_simulation(n, law.b(), rng);
  return {loc.zloc / law.pmf(n), n, loc.work + 1, loc.zloc};
}

}  // namespace tailsum
