#include "tailsum/distribution.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "tailsum/kernels.hpp"

namespace tailsum {

Distribution::Distribution(Kind kind, double alpha) : kind_(kind), alpha_(alpha), shift_(0.0) {
  if (!(alpha > 2.0) || !std::isfinite(alpha)) {
    throw std::invalid_argument("tail index alpha must be finite and > 2 (got " +
                                std::to_string(alpha) + ")");
  }
  if (kind == Kind::CenteredPareto) shift_ = alpha / (alpha - 1.0);
}

Distribution Distribution::pareto(double alpha) { return {Kind::Pareto, alpha}; }

Distribution Distribution::centered_pareto(double alpha) {
  return {Kind::CenteredPareto, alpha};
}

std::string_view Distribution::name() const noexcept {
  return kind_ == Kind::Pareto ? "pareto" : "centered_pareto";
}

double Distribution::tail(double x) const noexcept {
  const double y = x + shift_;
  if (!(y > 1.0)) return 1.0;
  return std::exp(-alpha_ * std::log(y));
}

double Distribution::quantile(double u) const noexcept {
  return std::exp(-std::log(u) / alpha_) - shift_;
}

double Distribution::mean() const noexcept {
  return kind_ == Kind::Pareto ? alpha_ / (alpha_ - 1.0) : 0.0;
}

void Distribution::sample(Rng& rng, std::span<double> out) const {
  for (double& v : out) v = rng.uniform();
  kernels::pareto_quantiles(out, alpha_, shift_, out);
}

}  // namespace tailsum
