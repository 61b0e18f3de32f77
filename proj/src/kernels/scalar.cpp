#include <algorithm>
#include <limits>

#include "detail.hpp"

namespace tailsum::kernels::scalar {

void pareto_quantiles(std::span<const double> u, double alpha, double shift,
                      std::span<double> out) {
  const double neg_inv_alpha = -1.0 / alpha;
  const std::size_t n = std::min(u.size(), out.size());
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = detail::exp_bounded(detail::log_positive(u[i]) * neg_inv_alpha) - shift;
  }
}

SumMax weighted_sum_max(std::span<const double> w, std::span<const double> x) {
  constexpr double kNegInf = -std::numeric_limits<double>::infinity();
  double acc[detail::kLanes] = {0.0, 0.0, 0.0, 0.0};
  double mx[detail::kLanes] = {kNegInf, kNegInf, kNegInf, kNegInf};
  const std::size_t n = std::min(w.size(), x.size());
  return detail::finish_sum_max(acc, mx, w.data(), x.data(), 0, n);
}

}  // namespace tailsum::kernels::scalar
