#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "tailsum/coefficients.hpp"

using tailsum::CoefficientSequence;
using tailsum::KappaClass;

namespace {

// Brute-force partial sum plus a crude integral bound for the remainder.
double brute_sum(const CoefficientSequence& seq, double p, bool weighted) {
  double s = 0.0;
  for (std::size_t n = 2000000; n >= 1; --n) {
    const double term = std::pow(seq.coeff(n), p);
    s += weighted ? static_cast<double>(n) * term : term;
  }
  return s;
}

}  // namespace

TEST_CASE("coefficients") {
  const auto g = CoefficientSequence::geometric(0.9);
  CHECK(g.coeff(1) == doctest::Approx(0.9));
  CHECK(g.coeff(2) == doctest::Approx(0.81));
  CHECK_THROWS_AS(g.coeff(0), std::invalid_argument);
  const auto p = CoefficientSequence::polynomial(0.5, 3.0);
  CHECK(p.coeff(2) == doctest::Approx(0.0625).epsilon(1e-15));
  CHECK(p.sup() == 0.5);
}

TEST_CASE("geometric closed-form sums") {
  const auto g = CoefficientSequence::geometric(0.9);
  CHECK(g.sum_a() == doctest::Approx(9.0).epsilon(1e-14));
  CHECK(g.sum_n_a() == doctest::Approx(90.0).epsilon(1e-14));
  CHECK(g.sum_a_alpha(4.0) == doctest::Approx(0.6561 / 0.3439).epsilon(1e-14));
  CHECK(g.sum_a_alpha(4.0) == doctest::Approx(1.907822).epsilon(1e-6));
  const auto tail = g.power_tail(4.0, 3);
  CHECK(tail.value == doctest::Approx(std::pow(0.6561, 4) / 0.3439).epsilon(1e-13));
  CHECK(g.power_tail(1.0, 0).value == doctest::Approx(9.0).epsilon(1e-14));
}

TEST_CASE("polynomial sums are certified") {
  const auto p = CoefficientSequence::polynomial(0.5, 3.0);
  // sum n^-3 = zeta(3), sum n^-2 = pi^2/6.
  const double zeta3 = 1.2020569031595942854;
  CHECK(p.sum_a() == doctest::Approx(0.5 * zeta3).epsilon(1e-13));
  CHECK(p.sum_n_a() == doctest::Approx(0.5 * M_PI * M_PI / 6.0).epsilon(1e-13));
  const auto s4 = p.power_sum(4.0);
  CHECK(s4.value == doctest::Approx(std::pow(0.5, 4) * brute_sum(CoefficientSequence::polynomial(1.0, 3.0), 4.0, false)).epsilon(1e-12));
  CHECK(s4.error_bound <= 1e-12 * s4.value);
  const auto w = p.weighted_power_sum(4.0);
  CHECK(w.value == doctest::Approx(brute_sum(p, 4.0, true)).epsilon(1e-12));

  const auto q = CoefficientSequence::polynomial(1.0, 2.5);
  const auto t = q.power_tail(1.0, 10);
  double head = 0.0;
  for (std::size_t n = 10; n >= 1; --n) head += q.coeff(n);
  CHECK(t.value + head == doctest::Approx(q.sum_a()).epsilon(1e-13));
  CHECK(t.error_bound <= 1e-12 * t.value);
}

TEST_CASE("hurwitz tail against known zeta values") {
  const double zeta4 = std::pow(M_PI, 4) / 90.0;
  for (std::uint64_t first : {1u, 2u, 50u}) {
    double head = 0.0;
    for (std::uint64_t i = first - 1; i >= 1; --i) head += std::pow(static_cast<double>(i), -4.0);
    const auto z = tailsum::hurwitz_zeta_tail(4.0, first);
    CHECK(std::abs(z.value - (zeta4 - head)) <= z.error_bound + 1e-15 * zeta4);
    CHECK(z.error_bound <= 1e-12 * z.value);
  }
  const double zeta3 = 1.2020569031595942854;
  const auto z3 = tailsum::hurwitz_zeta_tail(3.0, 1);
  CHECK(std::abs(z3.value - zeta3) <= z3.error_bound + 1e-15);
}

TEST_CASE("kappa class") {
  CHECK(CoefficientSequence::geometric(0.9).kappa_class() == KappaClass::Infinite);
  CHECK(CoefficientSequence::geometric(0.5).kappa_class() == KappaClass::Infinite);
  CHECK(CoefficientSequence::polynomial(0.5, 3.0).kappa_class() == KappaClass::Finite);
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(CoefficientSequence::geometric(1.0), std::invalid_argument);
  CHECK_THROWS_AS(CoefficientSequence::geometric(0.0), std::invalid_argument);
  CHECK_THROWS_AS(CoefficientSequence::polynomial(0.5, 2.0), std::invalid_argument);
  CHECK_THROWS_AS(CoefficientSequence::polynomial(-1.0, 3.0), std::invalid_argument);
}

TEST_CASE("scaling") {
  const auto g = CoefficientSequence::geometric(0.9).scaled(1.0 / 0.9);
  CHECK(g.coeff(1) == doctest::Approx(1.0));
  CHECK(g.coeff(3) == doctest::Approx(0.81));
  CHECK(g.sum_a() == doctest::Approx(10.0).epsilon(1e-14));
  CHECK(g.within_unit_interval());
}
