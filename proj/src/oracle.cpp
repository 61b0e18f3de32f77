#include "tailsum/oracle.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "tailsum/random.hpp"

namespace tailsum::oracle {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kErrorDensity = 1e-13;
constexpr unsigned kMaxDepth = 30;
constexpr double kLadderRatio = 0.125;
// The ladder toward u = 0 stops this far below the smallest breakpoint; the
// neglected sliver contributes at most its width (integrands are <= 1).
constexpr double kFloorFactor = 1e-18;

struct Var {
  double a;
  bool in_sum;
};

// Integrals over the increments are taken in quantile space, x = Q(u) with u
// uniform on (0, 1], which turns every expectation into an integral of a
// bounded function over a bounded interval. Kinks and jumps of the
// integrands sit at analytically known points (where the remaining
// increments are pinned at the support edge or at the running maximum);
// those are passed to the integrator as breakpoints.
class Quadrature {
 public:
  explicit Quadrature(const Distribution& dist) : dist_(dist), low_(dist.support_low()) {}

  double error() const noexcept { return outer_error_ + inner_error_; }

  // P{ sum_{v in sum vars} a_v X_v > c, a_v X_v <= cap for all v }.
  double conditional(const std::vector<Var>& vars, double cap, double c, bool outermost) {
    double factor = 1.0;
    std::vector<Var> sums;
    for (const Var& v : vars) {
      if (v.in_sum) {
        sums.push_back(v);
      } else if (cap != kInf) {
        factor *= dist_.cdf(cap / v.a);
      }
    }
    if (factor == 0.0) return 0.0;
    if (sums.empty()) return c < 0.0 ? factor : 0.0;
    if (sums.size() == 1) {
      const double a = sums[0].a;
      const double upper = cap == kInf ? 0.0 : dist_.tail(cap / a);
      return factor * std::max(0.0, dist_.tail(c / a) - upper);
    }

    const Var k = sums.front();
    const std::vector<Var> rest(sums.begin() + 1, sums.end());
    const double lo = cap == kInf ? 0.0 : dist_.tail(cap / k.a);
    if (lo >= 1.0) return 0.0;

    std::vector<double> cut_x;
    for_each_pinning(rest, cap, [&](double pinned, int n_cap) {
      (void)n_cap;
      cut_x.push_back((c - pinned) / k.a);
    });
    auto f = [&](double u) { return conditional(rest, cap, c - k.a * dist_.quantile(u), false); };
    return factor * integrate(f, lo, cut_x, outermost);
  }

  // P{ sum_{i in I} a_i X_i > b, a_j X_j is the largest a_i X_i (i <= n) }.
  double joint(const std::vector<Var>& others, Var top, double b) {
    std::vector<double> cut_x;
    for (const Var& v : others) cut_x.push_back(v.a * low_ / top.a);
    std::vector<Var> rest_sum;
    for (const Var& v : others) {
      if (v.in_sum) rest_sum.push_back(v);
    }
    // Pinned remaining increments with n_cap of them at the running max
    // a_j x: b - [j in I] a_j x - pinned - n_cap a_j x = 0.
    for_each_pinning(rest_sum, 1.0, [&](double pinned, int n_cap) {
      const double denom = top.a * ((top.in_sum ? 1.0 : 0.0) + n_cap);
      if (denom > 0.0) cut_x.push_back((b - pinned) / denom);
    }, /*cap_is_symbolic=*/true);
    auto f = [&](double u) {
      const double t = top.a * dist_.quantile(u);
      return conditional(others, t, top.in_sum ? b - t : b, false);
    };
    return integrate(f, 0.0, cut_x, true);
  }

 private:
  // Calls fn(pinned_sum, n_cap) for every way of pinning a subset of `vars`
  // at the support edge (a_v * low) or at the cap. With a symbolic cap only
  // the count of cap-pinned variables is reported.
  template <class Fn>
  void for_each_pinning(const std::vector<Var>& vars, double cap, Fn&& fn,
                        bool cap_is_symbolic = false) const {
    const std::size_t n = vars.size();
    std::size_t combos = 1;
    for (std::size_t i = 0; i < n; ++i) combos *= 3;
    for (std::size_t code = 0; code < combos; ++code) {
      std::size_t rem = code;
      double pinned = 0.0;
      int n_cap = 0;
      for (std::size_t i = 0; i < n; ++i) {
        const std::size_t choice = rem % 3;
        rem /= 3;
        if (choice == 1) pinned += vars[i].a * low_;
        if (choice == 2) {
          if (cap_is_symbolic) {
            ++n_cap;
          } else if (cap == kInf) {
            pinned = kInf;
          } else {
            pinned += cap;
          }
        }
      }
      if (std::isfinite(pinned)) fn(pinned, n_cap);
    }
  }

  template <class F>
  double integrate(F&& f, double lo, const std::vector<double>& cut_x, bool outermost) {
    std::vector<double> cuts;
    for (double x : cut_x) {
      if (std::isfinite(x) && x > low_) {
        const double u = dist_.tail(x);
        if (u > lo && u < 1.0) cuts.push_back(u);
      }
    }
    double smallest = 1e-3;
    for (double u : cuts) smallest = std::min(smallest, u);
    double floor = lo;
    if (lo == 0.0) {
      floor = smallest * kFloorFactor;
      (outermost ? outer_error_ : inner_error_) += floor;
    }
    for (double u = 0.5; u > floor; u *= kLadderRatio) cuts.push_back(u);
    cuts.push_back(floor);
    cuts.push_back(1.0);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    double total = 0.0;
    double err_total = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
      if (cuts[i] < floor) continue;
      bisect(f, cuts[i], cuts[i + 1], kMaxDepth, total, err_total);
    }
    if (outermost) {
      outer_error_ += err_total;
    } else {
      inner_error_ = std::max(inner_error_, err_total);
    }
    return total;
  }

  // Adaptive bisection on a 15-point Kronrod rule with its embedded 7-point
  // Gauss rule as error estimate. The tolerance is absolute and proportional
  // to the interval width, so the integrands (probabilities) share one error
  // density regardless of where in (0, 1] they live.
  template <class F>
  static void bisect(F& f, double a, double b, unsigned depth, double& total, double& err) {
    using Kronrod = boost::math::quadrature::gauss_kronrod<double, 15>;
    using Gauss = boost::math::quadrature::gauss<double, 7>;
    const auto& xk = Kronrod::abscissa();
    const auto& wk = Kronrod::weights();
    const auto& wg = Gauss::weights();
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    double fx[15];
    fx[0] = f(mid);
    for (std::size_t i = 1; i < xk.size(); ++i) {
      fx[2 * i - 1] = f(mid - half * xk[i]);
      fx[2 * i] = f(mid + half * xk[i]);
    }
    double k = wk[0] * fx[0];
    double g = wg[0] * fx[0];
    for (std::size_t i = 1; i < xk.size(); ++i) {
      const double pair = fx[2 * i - 1] + fx[2 * i];
      k += wk[i] * pair;
      if (i % 2 == 0) g += wg[i / 2] * pair;
    }
    k *= half;
    g *= half;
    const double e = std::abs(k - g);
    if (e <= kErrorDensity * (b - a) || depth == 0) {
      total += k;
      err += e;
      return;
    }
    bisect(f, a, mid, depth - 1, total, err);
    bisect(f, mid, b, depth - 1, total, err);
  }

  const Distribution& dist_;
  double low_;
  double outer_error_ = 0.0;
  double inner_error_ = 0.0;
};

void require_small_n(std::size_t n) {
  if (n < 2 || n > 3) {
    throw std::invalid_argument("quadrature oracle supports n in {2, 3} only");
  }
}

}  // namespace

std::string_view method_name(Method m) noexcept {
  switch (m) {
    case Method::ClosedForm:
      return "closed_form";
    case Method::Quadrature:
      return "quadrature";
    case Method::PlainMC:
      return "plain_mc";
  }
  return "unknown";
}

OracleResult tail_s1(double b, const Distribution& dist, const CoefficientSequence& seq) {
  return {dist.tail(b / seq.coeff(1)), Method::ClosedForm, 0.0};
}

OracleResult tail_sn_quadrature(std::size_t n, double b, const Distribution& dist,
                                const CoefficientSequence& seq) {
  if (n == 1) return tail_s1(b, dist, seq);
  require_small_n(n);
  std::vector<Var> vars;
  for (std::size_t i = 1; i <= n; ++i) vars.push_back({seq.coeff(i), true});
  Quadrature q(dist);
  const double value = q.conditional(vars, kInf, b, true);
  return {value, Method::Quadrature, q.error()};
}

OracleResult joint_with_max(std::size_t n, std::size_t j, bool full_sum, double b,
                            const Distribution& dist, const CoefficientSequence& seq) {
  require_small_n(n);
  if (j < 1 || j > n) throw std::invalid_argument("max index j must lie in 1..n");
  const std::size_t k = full_sum ? n : n - 1;
  std::vector<Var> others;
  for (std::size_t i = 1; i <= n; ++i) {
    if (i != j) others.push_back({seq.coeff(i), i <= k});
  }
  Quadrature q(dist);
  const double value = q.joint(others, {seq.coeff(j), j <= k}, b);
  return {value, Method::Quadrature, q.error()};
}

LocalPartition local_partition(std::size_t n, double b, const Distribution& dist,
                               const CoefficientSequence& seq) {
  require_small_n(n);
  LocalPartition out{{0.0, Method::Quadrature, 0.0}, {0.0, Method::Quadrature, 0.0}};
  for (std::size_t j = 1; j <= n; ++j) {
    const OracleResult with_n = joint_with_max(n, j, true, b, dist, seq);
    const OracleResult without_n = joint_with_max(n, j, false, b, dist, seq);
    OracleResult& target = j == n ? out.p1 : out.p2;
    target.value += with_n.value - without_n.value;
    target.error_bound += with_n.error_bound + without_n.error_bound;
  }
  return out;
}

double mean_abs(const Distribution& dist) noexcept {
  const double alpha = dist.alpha();
  if (dist.kind() == Distribution::Kind::Pareto) return alpha / (alpha - 1.0);
  // E|X - mu| = 2 E(X - mu)^+ = 2 * int_mu^inf x^-alpha dx.
  const double mu = dist.shift();
  return 2.0 * std::pow(mu, 1.0 - alpha) / (alpha - 1.0);
}

double truncation_remainder_bound(std::size_t m, const Distribution& dist,
                                  const CoefficientSequence& seq) {
  const CertifiedSum tail = seq.power_tail(1.0, m);
  return (tail.value + tail.error_bound) * mean_abs(dist);
}

OracleResult tail_trunc_plain_mc(std::size_t m, double b, const Distribution& dist,
                                 const CoefficientSequence& seq, std::uint64_t replications,
                                 std::uint64_t seed, std::uint64_t stream) {
  if (m < 1) throw std::invalid_argument("truncation level m must be >= 1");
  std::vector<double> a(m);
  for (std::size_t i = 0; i < m; ++i) a[i] = seq.coeff(i + 1);
  const double inv_alpha = 1.0 / dist.alpha();
  std::uint64_t hits = 0;
  for (std::uint64_t r = 0; r < replications; ++r) {
    Rng rng = Rng::substream(seed, stream, r);
    double s = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      s += a[i] * (std::pow(rng.uniform(), -inv_alpha) - dist.shift());
    }
    if (s > b) ++hits;
  }
  OracleResult out;
  out.method = Method::PlainMC;
  out.truncation_remainder = truncation_remainder_bound(m, dist, seq);
  if (replications == 0) {
    out.degenerate = true;
    out.value = std::numeric_limits<double>::quiet_NaN();
    out.error_bound = kInf;
    out.std_error = kInf;
    return out;
  }
  const double rd = static_cast<double>(replications);
  out.value = static_cast<double>(hits) / rd;
  if (replications < 2) {
    out.degenerate = true;
    out.error_bound = kInf;
    out.std_error = kInf;
    return out;
  }
  // Sample variance of the indicators.
  const double var = out.value * (1.0 - out.value) * rd / (rd - 1.0);
  out.std_error = std::sqrt(var / rd);
  out.error_bound = 4.0 * out.std_error;
  return out;
}

}  // namespace tailsum::oracle
