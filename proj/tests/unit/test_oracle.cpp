#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "tailsum/oracle.hpp"

using namespace tailsum;

namespace {

const Distribution kPareto = Distribution::pareto(4.0);
const Distribution kCentered = Distribution::centered_pareto(4.0);
const CoefficientSequence kGeo = CoefficientSequence::geometric(0.9);

// P{0.9 X_1 + 0.81 X_2 > 2} for Pareto(4) increments; agrees with an
// x-space adaptive quadrature to 1e-15.
constexpr double kTailS2AtB2 = 0.65393855816874846;

}  // namespace

TEST_CASE("closed form single term") {
  CHECK(oracle::tail_s1(10.0, kPareto, kGeo).value == doctest::Approx(6.561e-5).epsilon(1e-12));
  CHECK(oracle::tail_s1(0.9, kPareto, kGeo).value == 1.0);
  CHECK(oracle::tail_s1(0.5, kPareto, kGeo).value == 1.0);
}

TEST_CASE("two-term quadrature regression value") {
  const auto r = oracle::tail_sn_quadrature(2, 2.0, kPareto, kGeo);
  CHECK(r.value == doctest::Approx(kTailS2AtB2).epsilon(1e-13));
  CHECK(r.error_bound < 1e-12);
  CHECK(r.method == oracle::Method::Quadrature);
}

TEST_CASE("quadrature against independent values") {
  CHECK(oracle::tail_sn_quadrature(3, 5.0, kPareto, kGeo).value ==
        doctest::Approx(0.02247953541855072).epsilon(1e-12));
  CHECK(oracle::tail_sn_quadrature(3, 10.0, kCentered, kGeo).value ==
        doctest::Approx(9.254364180009806e-05).epsilon(1e-11));
  CHECK(oracle::tail_sn_quadrature(3, 2.0, kPareto, kGeo).value == 1.0);
  CHECK_THROWS_AS(oracle::tail_sn_quadrature(4, 2.0, kPareto, kGeo), std::invalid_argument);
}

TEST_CASE("partition on the maximum adds up") {
  for (const auto& d : {kPareto, kCentered}) {
    for (double b : {2.0, 5.0, 10.0}) {
      for (std::size_t n : {2u, 3u}) {
        const auto lp = oracle::local_partition(n, b, d, kGeo);
        const double lhs = lp.p1.value + lp.p2.value;
        const double rhs = oracle::tail_sn_quadrature(n, b, d, kGeo).value -
                           (n == 2 ? oracle::tail_s1(b, d, kGeo).value
                                   : oracle::tail_sn_quadrature(2, b, d, kGeo).value);
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10));
        CHECK(lp.p1.value >= 0.0);
      }
    }
  }
}

TEST_CASE("single big jump") {
  const double b = 1e6;
  const double ratio = oracle::tail_sn_quadrature(2, b, kPareto, kGeo).value /
                       (kPareto.tail(b) * (std::pow(0.9, 4) + std::pow(0.81, 4)));
  CHECK(ratio >= 0.99);
  CHECK(ratio <= 1.01);
}

TEST_CASE("plain Monte Carlo oracle") {
  const auto r = oracle::tail_trunc_plain_mc(200, 0.0, kCentered, kGeo, 20000, 3);
  CHECK(r.value > 0.0);
  CHECK(r.value < 1.0);
  CHECK_FALSE(r.degenerate);
  CHECK(r.error_bound == doctest::Approx(4.0 * r.std_error));
  CHECK(r.truncation_remainder > 0.0);
  CHECK(r.truncation_remainder < 1e-8);
  const auto one = oracle::tail_trunc_plain_mc(200, 5.0, kPareto, kGeo, 1, 3);
  CHECK(one.degenerate);
}

TEST_CASE("mean absolute value") {
  CHECK(oracle::mean_abs(kPareto) == doctest::Approx(4.0 / 3.0));
  // E|X - mu| = 2 E(X - mu)^+ = 2 int_mu^inf x^-4 dx.
  const double mu = 4.0 / 3.0;
  CHECK(oracle::mean_abs(kCentered) == doctest::Approx(2.0 * std::pow(mu, -3.0) / 3.0));
}
