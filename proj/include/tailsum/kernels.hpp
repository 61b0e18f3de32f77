#pragma once

// Data-parallel inner loops of the samplers. Each kernel has a portable
// scalar variant and (on x86-64) an AVX2 variant; the active variant is
// chosen once at runtime from CPUID. Both variants evaluate the same
// operation sequence lane by lane and return bit-identical results, so the
// choice never changes an estimate.

#include <cstddef>
#include <span>
#include <string_view>

namespace tailsum::kernels {

enum class Isa { Scalar, Avx2 };

struct SumMax {
  double sum;
  double max;  ///< -inf for empty input
};

/// out[i] = u[i]^(-1/alpha) - shift, for u[i] in (0, 1] (normal doubles).
/// Relative error against a correctly rounded pow is a few ulps.
void pareto_quantiles(std::span<const double> u, double alpha, double shift,
                      std::span<double> out);

/// (sum_i w[i]*x[i], max_i w[i]*x[i]) over the common length.
SumMax weighted_sum_max(std::span<const double> w, std::span<const double> x);

Isa active_isa() noexcept;
bool isa_available(Isa isa) noexcept;
/// Pin the dispatcher (tests, benchmarking). Throws if `isa` is unavailable.
void force_isa(Isa isa);
/// Back to CPUID-based selection (honours TAILSUM_KERNELS=scalar).
void reset_isa() noexcept;
std::string_view isa_name(Isa isa) noexcept;

namespace scalar {
void pareto_quantiles(std::span<const double> u, double alpha, double shift,
                      std::span<double> out);
SumMax weighted_sum_max(std::span<const double> w, std::span<const double> x);
}  // namespace scalar

namespace avx2 {
void pareto_quantiles(std::span<const double> u, double alpha, double shift,
                      std::span<double> out);
SumMax weighted_sum_max(std::span<const double> w, std::span<const double> x);
}  // namespace avx2

}  // namespace tailsum::kernels
