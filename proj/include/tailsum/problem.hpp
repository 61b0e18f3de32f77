#pragma once

#include "tailsum/coefficients.hpp"
#include "tailsum/distribution.hpp"

namespace tailsum {

/// Estimand P{ sum_n a_n X_n > b }.
struct Problem {
  Distribution dist;
  CoefficientSequence seq;
  double b;
};

/// Whether the instance already has zero-mean increments and weights in (0, 1].
bool is_standard(const Problem& problem) noexcept;

/// Rewrites P{sum a_n X_n > b} as P{sum ã_n (X_n - E X) > b̃} with
/// ã_n = a_n / sup a, b̃ = (b - (sum a_n) E X) / sup a. Standard instances are
/// returned unchanged. Throws std::domain_error if b̃ <= 0, since the
/// rewritten estimand is then no longer a right-tail probability.
Problem normalize_problem(const Problem& raw);

}  // namespace tailsum
