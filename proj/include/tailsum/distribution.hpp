#pragma once

#include <span>
#include <string_view>

#include "tailsum/random.hpp"

namespace tailsum {

/// Regularly varying increment law with a pure power tail (slowly varying
/// part L == 1). Two members of the family are provided:
///
///   Pareto(alpha):          P{X > x} = min(1, x^-alpha),        X >= 1
///   CenteredPareto(alpha):  X = Pareto - alpha/(alpha-1),       E X = 0
///
/// alpha > 2 is required so that the increments have finite variance. The
/// estimators only ever evaluate the tail; densities are not needed at run
/// time. Values are immutable and safe to share between threads.
class Distribution {
 public:
  enum class Kind { Pareto, CenteredPareto };

  static Distribution pareto(double alpha);
  static Distribution centered_pareto(double alpha);

  Kind kind() const noexcept { return kind_; }
  double alpha() const noexcept { return alpha_; }
  std::string_view name() const noexcept;

  /// Amount subtracted from a standard Pareto variate (0 or the Pareto mean).
  double shift() const noexcept { return shift_; }
  /// Left end of the support: 1 - shift.
  double support_low() const noexcept { return 1.0 - shift_; }

  /// P{X > x}. Evaluated as exp(-alpha * log(x + shift)); no clamping of
  /// tiny results (subnormals are returned as computed).
  double tail(double x) const noexcept;
  /// P{X <= x}.
  double cdf(double x) const noexcept { return 1.0 - tail(x); }
  /// Inverse transform: u in (0, 1] -> u^(-1/alpha) - shift.
  double quantile(double u) const noexcept;
  double mean() const noexcept;

  double sample(Rng& rng) const noexcept { return quantile(rng.uniform()); }
  /// Fills `out` with i.i.d. draws. Consumes exactly out.size() uniforms, in
  /// order, so the result matches repeated sample() calls up to the
  /// batch kernel's last-ulp differences from std::pow.
  void sample(Rng& rng, std::span<double> out) const;

  /// Same family member with zero mean.
  Distribution centered() const { return Distribution(Kind::CenteredPareto, alpha_); }

  friend bool operator==(const Distribution&, const Distribution&) = default;

 private:
  Distribution(Kind kind, double alpha);

  Kind kind_;
  double alpha_;
  double shift_;
};

}  // namespace tailsum
