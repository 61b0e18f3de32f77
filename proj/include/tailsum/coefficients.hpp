#pragma once

#include <cstddef>
#include <cstdint>
#include <string>

namespace tailsum {

/// Decay class of the weights: kappa = sup{k : limsup n^k a_n < inf}.
/// Polynomial weights have kappa = s (Finite); geometric ones kappa = inf.
enum class KappaClass { Finite, Infinite };

/// A sum together with a certified bound on its absolute error.
struct CertifiedSum {
  double value;
  double error_bound;
};

/// Relative accuracy guaranteed for every infinite sum returned below.
inline constexpr double kSumRelativeTolerance = 1e-12;

/// Positive, decreasing weights (a_n : n >= 1) with sum_n n a_n < inf.
///
///   Geometric(rho, scale):   a_n = scale * rho^n,   rho in (0, 1)
///   Polynomial(c, s):        a_n = c * n^-s,        s > 2
///
/// Only families with computable tail bounds are admitted: the outer level
/// law needs its normalizing constant to be trustworthy. Geometric sums are
/// closed form; polynomial ones reduce to Hurwitz zeta values evaluated by
/// Euler-Maclaurin with a certified remainder.
class CoefficientSequence {
 public:
  enum class Kind { Geometric, Polynomial };

  static CoefficientSequence geometric(double rho, double scale = 1.0);
  static CoefficientSequence polynomial(double c, double s);

  Kind kind() const noexcept { return kind_; }
  /// rho for Geometric, s for Polynomial.
  double decay() const noexcept { return decay_; }
  /// scale for Geometric, c for Polynomial.
  double scale() const noexcept { return scale_; }

  /// a_n for n >= 1; throws std::invalid_argument for n == 0.
  double coeff(std::size_t n) const;
  /// sup_n a_n (= a_1 for the monotone families).
  double sup() const noexcept { return scale_ * (kind_ == Kind::Geometric ? decay_ : 1.0); }
  /// Whether every a_n lies in (0, 1].
  bool within_unit_interval() const noexcept { return sup() <= 1.0; }

  double sum_a() const noexcept { return sum_a_; }
  double sum_n_a() const noexcept { return sum_n_a_; }
  double sum_a_alpha(double alpha) const { return power_sum(alpha).value; }

  /// sum_{n>=1} a_n^p, p >= 1.
  CertifiedSum power_sum(double p) const;
  /// sum_{n>=1} n a_n^p, p >= 1.
  CertifiedSum weighted_power_sum(double p) const;
  /// sum_{i>n} a_i^p, p >= 1, n >= 0.
  CertifiedSum power_tail(double p, std::size_t n) const;

  KappaClass kappa_class() const noexcept {
    return kind_ == Kind::Geometric ? KappaClass::Infinite : KappaClass::Finite;
  }

  /// Same family with every weight multiplied by `factor` > 0.
  CoefficientSequence scaled(double factor) const;

  std::string describe() const;

  friend bool operator==(const CoefficientSequence& a, const CoefficientSequence& b) noexcept {
    return a.kind_ == b.kind_ && a.decay_ == b.decay_ && a.scale_ == b.scale_;
  }

 private:
  CoefficientSequence(Kind kind, double decay, double scale);

  Kind kind_;
  double decay_;
  double scale_;
  double sum_a_;
  double sum_n_a_;
};

/// sum_{i >= first} i^-t for t > 1, first >= 1, with a certified absolute
/// error bound (relative size <= kSumRelativeTolerance).
CertifiedSum hurwitz_zeta_tail(double t, std::uint64_t first);

}  // namespace tailsum
