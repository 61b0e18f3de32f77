#include "tailsum/problem.hpp"

#include <stdexcept>
#include <string>

namespace tailsum {

bool is_standard(const Problem& problem) noexcept {
  return problem.dist.mean() == 0.0 && problem.seq.within_unit_interval();
}

Problem normalize_problem(const Problem& raw) {
  if (is_standard(raw)) return raw;
  const double sup = raw.seq.sup();
  const double b = (raw.b - raw.seq.sum_a() * raw.dist.mean()) / sup;
  if (!(b > 0.0)) {
    throw std::domain_error("normalized threshold " + std::to_string(b) +
                            " is not positive; the rewritten problem is not a right tail");
  }
  return {raw.dist.centered(), raw.seq.scaled(1.0 / sup), b};
}

}  // namespace tailsum
