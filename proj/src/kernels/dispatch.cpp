#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "tailsum/kernels.hpp"

namespace tailsum::kernels {
namespace {

bool cpu_has_avx2() noexcept {
#if defined(TAILSUM_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

Isa detect() noexcept {
  if (const char* env = std::getenv("TAILSUM_KERNELS");
      env != nullptr && std::string(env) == "scalar") {
    return Isa::Scalar;
  }
  return cpu_has_avx2() ? Isa::Avx2 : Isa::Scalar;
}

std::atomic<Isa>& current() noexcept {
  static std::atomic<Isa> isa{detect()};
  return isa;
}

}  // namespace

Isa active_isa() noexcept { return current().load(std::memory_order_relaxed); }

bool isa_available(Isa isa) noexcept {
  return isa == Isa::Scalar || cpu_has_avx2();
}

void force_isa(Isa isa) {
  if (!isa_available(isa)) {
    throw std::runtime_error("kernel variant '" + std::string(isa_name(isa)) +
                             "' is not available on this CPU/build");
  }
  current().store(isa, std::memory_order_relaxed);
}

void reset_isa() noexcept { current().store(detect(), std::memory_order_relaxed); }

std::string_view isa_name(Isa isa) noexcept {
  return isa == Isa::Avx2 ? "avx2" : "scalar";
}

void pareto_quantiles(std::span<const double> u, double alpha, double shift,
                      std::span<double> out) {
#ifdef TAILSUM_HAVE_AVX2
  if (active_isa() == Isa::Avx2) return avx2::pareto_quantiles(u, alpha, shift, out);
#endif
  scalar::pareto_quantiles(u, alpha, shift, out);
}

SumMax weighted_sum_max(std::span<const double> w, std::span<const double> x) {
#ifdef TAILSUM_HAVE_AVX2
  if (active_isa() == Isa::Avx2) return avx2::weighted_sum_max(w, x);
#endif
  return scalar::weighted_sum_max(w, x);
}

}  // namespace tailsum::kernels
