#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "tailsum/distribution.hpp"
#include "tailsum/random.hpp"

using tailsum::Distribution;
using tailsum::Rng;

TEST_CASE("pareto tail") {
  const auto d = Distribution::pareto(4.0);
  CHECK(d.tail(1.0) == 1.0);
  CHECK(d.tail(0.5) == 1.0);
  CHECK(d.tail(2.0) == doctest::Approx(0.0625).epsilon(1e-15));
  CHECK(d.tail(200.0) == doctest::Approx(6.25e-10).epsilon(1e-14));
  CHECK(d.cdf(2.0) == doctest::Approx(0.9375).epsilon(1e-15));
}

TEST_CASE("centered pareto tail is the shifted pareto tail") {
  const auto d = Distribution::centered_pareto(4.0);
  const double mu = 4.0 / 3.0;
  CHECK(d.shift() == doctest::Approx(mu));
  CHECK(d.tail(1.0 - mu) == 1.0);
  CHECK(d.tail(-1.0) == 1.0);
  CHECK(d.tail(2.0 - mu) == doctest::Approx(0.0625).epsilon(1e-14));
  CHECK(d.support_low() == doctest::Approx(1.0 - mu));
}

TEST_CASE("quantile inverts the tail") {
  const auto p = Distribution::pareto(4.0);
  CHECK(p.quantile(1.0) == 1.0);
  CHECK(p.quantile(0.0625) == doctest::Approx(2.0).epsilon(1e-15));
  const auto c = Distribution::centered_pareto(4.0);
  CHECK(c.quantile(0.0625) == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
  for (double u : {1e-12, 1e-6, 0.01, 0.3, 0.77}) {
    CHECK(p.tail(p.quantile(u)) == doctest::Approx(u).epsilon(1e-13));
    CHECK(c.tail(c.quantile(u)) == doctest::Approx(u).epsilon(1e-13));
  }
}

TEST_CASE("means") {
  CHECK(Distribution::pareto(4.0).mean() == doctest::Approx(4.0 / 3.0));
  CHECK(Distribution::pareto(3.0).mean() == doctest::Approx(1.5));
  CHECK(Distribution::centered_pareto(4.0).mean() == 0.0);
}

TEST_CASE("alpha must exceed 2") {
  CHECK_THROWS_AS(Distribution::pareto(2.0), std::invalid_argument);
  CHECK_THROWS_AS(Distribution::centered_pareto(1.5), std::invalid_argument);
  CHECK_THROWS_AS(Distribution::pareto(std::nan("")), std::invalid_argument);
  CHECK_NOTHROW(Distribution::pareto(2.0001));
}

TEST_CASE("batch sampling matches single draws and the marginal law") {
  const auto d = Distribution::pareto(4.0);
  Rng a(11);
  Rng b(11);
  std::vector<double> batch(1000);
  d.sample(a, batch);
  for (double x : batch) CHECK(x == doctest::Approx(d.sample(b)).epsilon(1e-14));

  // Kolmogorov-Smirnov distance on 2e5 draws: the 1e-3 critical value is
  // 1.95 / sqrt(n).
  std::vector<double> xs(200000);
  Rng rng(3);
  d.sample(rng, xs);
  std::sort(xs.begin(), xs.end());
  double ks = 0.0;
  const double n = static_cast<double>(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double f = d.cdf(xs[i]);
    ks = std::max({ks, std::abs(f - i / n), std::abs(f - (i + 1) / n)});
  }
  CHECK(ks < 1.95 / std::sqrt(n));
  CHECK(xs.front() >= 1.0);
}
