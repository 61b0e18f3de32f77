#include "tailsum/coefficients.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace tailsum {
namespace {

// B_{2k} / (2k)! for k = 1..10.
constexpr std::array<double, 10> kBernoulliOverFactorial = [] {
  constexpr std::array<double, 10> b2k = {1.0 / 6,     -1.0 / 30,       1.0 / 42,
                                          -1.0 / 30,   5.0 / 66,        -691.0 / 2730,
                                          7.0 / 6,     -3617.0 / 510,   43867.0 / 798,
                                          -174611.0 / 330};
  std::array<double, 10> out{};
  double factorial = 1.0;
  for (std::size_t k = 1; k <= out.size(); ++k) {
    factorial *= static_cast<double>(2 * k - 1) * static_cast<double>(2 * k);
    out[k - 1] = b2k[k - 1] / factorial;
  }
  return out;
}();

// Euler-Maclaurin for sum_{i>=K} i^-t. For f(x) = x^-t every derivative has
// constant sign and |f^(m)| decreases in x, so the remainder after any
// truncation is bounded by the first omitted correction term.
bool euler_maclaurin(double t, double k_start, double explicit_part, CertifiedSum& out) {
  const double integral = std::pow(k_start, 1.0 - t) / (t - 1.0);
  const double head = 0.5 * std::pow(k_start, -t);
  double total = explicit_part + integral + head;
  double rising = t;                  // (t)_{2k-1}
  double power = std::pow(k_start, -t - 1.0);  // K^{-t-2k+1}
  double previous = std::abs(head);
  for (std::size_t k = 1; k <= kBernoulliOverFactorial.size(); ++k) {
    const double term = kBernoulliOverFactorial[k - 1] * rising * power;
    if (std::abs(term) > previous) return false;  // asymptotic series turned
    if (std::abs(term) <= 0.1 * kSumRelativeTolerance * std::abs(total)) {
      out = {total, std::abs(term)};
      return true;
    }
    total += term;
    previous = std::abs(term);
    rising *= (t + static_cast<double>(2 * k - 1)) * (t + static_cast<double>(2 * k));
    power /= k_start * k_start;
  }
  return false;
}

}  // namespace

CertifiedSum hurwitz_zeta_tail(double t, std::uint64_t first) {
  if (!(t > 1.0)) throw std::invalid_argument("zeta tail requires exponent t > 1");
  if (first == 0) throw std::invalid_argument("zeta tail requires first index >= 1");
  std::uint64_t k_start = std::max<std::uint64_t>(first, 12 + static_cast<std::uint64_t>(t));
  for (int attempt = 0; attempt < 40; ++attempt) {
    // Explicit head, smallest terms first.
    double explicit_part = 0.0;
    for (std::uint64_t i = k_start; i-- > first;) {
      explicit_part += std::pow(static_cast<double>(i), -t);
    }
    CertifiedSum out{};
    if (euler_maclaurin(t, static_cast<double>(k_start), explicit_part, out)) return out;
    k_start *= 2;
  }
  throw std::runtime_error("zeta tail failed to reach the certified tolerance");
}

CoefficientSequence::CoefficientSequence(Kind kind, double decay, double scale)
    : kind_(kind), decay_(decay), scale_(scale), sum_a_(0.0), sum_n_a_(0.0) {
  if (!(scale > 0.0) || !std::isfinite(scale)) {
    throw std::invalid_argument("coefficient scale must be finite and > 0");
  }
  if (kind == Kind::Geometric && !(decay > 0.0 && decay < 1.0)) {
    throw std::invalid_argument("geometric ratio rho must lie in (0, 1)");
  }
  if (kind == Kind::Polynomial && !(decay > 2.0 && std::isfinite(decay))) {
    throw std::invalid_argument(
        "polynomial exponent s must be > 2 so that sum_n n a_n is finite");
  }
  sum_a_ = power_sum(1.0).value;
  sum_n_a_ = weighted_power_sum(1.0).value;
}

CoefficientSequence CoefficientSequence::geometric(double rho, double scale) {
  return {Kind::Geometric, rho, scale};
}

CoefficientSequence CoefficientSequence::polynomial(double c, double s) {
  return {Kind::Polynomial, s, c};
}

double CoefficientSequence::coeff(std::size_t n) const {
  if (n == 0) throw std::invalid_argument("coefficients are indexed from n = 1");
  const double nd = static_cast<double>(n);
  return kind_ == Kind::Geometric ? scale_ * std::pow(decay_, nd)
                                  : scale_ * std::pow(nd, -decay_);
}

CertifiedSum CoefficientSequence::power_sum(double p) const {
  const double sp = std::pow(scale_, p);
  if (kind_ == Kind::Geometric) {
    const double log_q = p * std::log(decay_);
    const double q = std::exp(log_q);
    return {sp * q / -std::expm1(log_q), 0.0};
  }
  const CertifiedSum z = hurwitz_zeta_tail(decay_ * p, 1);
  return {sp * z.value, sp * z.error_bound};
}

CertifiedSum CoefficientSequence::weighted_power_sum(double p) const {
  const double sp = std::pow(scale_, p);
  if (kind_ == Kind::Geometric) {
    const double log_q = p * std::log(decay_);
    const double one_minus_q = -std::expm1(log_q);
    return {sp * std::exp(log_q) / (one_minus_q * one_minus_q), 0.0};
  }
  const CertifiedSum z = hurwitz_zeta_tail(decay_ * p - 1.0, 1);
  return {sp * z.value, sp * z.error_bound};
}

CertifiedSum CoefficientSequence::power_tail(double p, std::size_t n) const {
  const double sp = std::pow(scale_, p);
  if (kind_ == Kind::Geometric) {
    const double log_q = p * std::log(decay_);
    return {sp * std::exp(static_cast<double>(n + 1) * log_q) / -std::expm1(log_q), 0.0};
  }
  const CertifiedSum z = hurwitz_zeta_tail(decay_ * p, static_cast<std::uint64_t>(n) + 1);
  return {sp * z.value, sp * z.error_bound};
}

CoefficientSequence CoefficientSequence::scaled(double factor) const {
  return {kind_, decay_, scale_ * factor};
}

std::string CoefficientSequence::describe() const {
  std::ostringstream os;
  if (kind_ == Kind::Geometric) {
    os << "geometric(rho=" << decay_;
    if (scale_ != 1.0) os << ", scale=" << scale_;
    os << ")";
  } else {
    os << "polynomial(c=" << scale_ << ", s=" << decay_ << ")";
  }
  return os.str();
}

}  // namespace tailsum
