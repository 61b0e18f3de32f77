#include "tailsum/cli.hpp"

#include <algorithm>
#include <array>
#include <boost/math/distributions/chi_squared.hpp>
#include <charconv>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "tailsum/local_estimator.hpp"
#include "tailsum/oracle.hpp"
#include "tailsum/outer_randomizer.hpp"
#include "tailsum/problem.hpp"

namespace tailsum::cli {
namespace {

std::string num(double v) {
  std::ostringstream os;
  os.imbue(std::locale::classic());
  os << v;
  return os.str();
}

bool r_warning_applies(const RunConfig& cfg) { return cfg.r <= 1.0; }

}  // namespace

void validate(const RunConfig& cfg) {
  if (cfg.distribution != "pareto" && cfg.distribution != "centered_pareto") {
    throw ConfigError("distribution must be 'pareto' or 'centered_pareto' (got '" +
                      cfg.distribution + "')");
  }
  if (!(cfg.alpha > 2.0) || !std::isfinite(cfg.alpha)) {
    throw ConfigError("alpha > 2 violated (alpha = " + num(cfg.alpha) + ")");
  }
  if (cfg.coefficients == "geometric") {
    if (!(cfg.rho > 0.0 && cfg.rho < 1.0)) {
      throw ConfigError("rho in (0, 1) violated (rho = " + num(cfg.rho) + ")");
    }
  } else if (cfg.coefficients == "polynomial") {
    if (!(cfg.poly_s > 2.0) || !std::isfinite(cfg.poly_s)) {
      throw ConfigError("s > 2 violated (s = " + num(cfg.poly_s) + ")");
    }
    if (!(cfg.poly_c > 0.0) || !std::isfinite(cfg.poly_c)) {
      throw ConfigError("c > 0 violated (c = " + num(cfg.poly_c) + ")");
    }
    if (cfg.poly_c > 1.0 && !cfg.normalize) {
      throw ConfigError("a_n <= 1 violated (c = " + num(cfg.poly_c) +
                        "); pass --normalize to rescale the weights");
    }
  } else {
    throw ConfigError("coefficients must be 'geometric' or 'polynomial' (got '" +
                      cfg.coefficients + "')");
  }
  if (cfg.b_values.empty()) throw ConfigError("b_values non-empty violated (no thresholds given)");
  for (double b : cfg.b_values) {
    if (!(b > 0.0) || !std::isfinite(b)) {
      throw ConfigError("b_values positive violated (b = " + num(b) + ")");
    }
  }
  if (!(cfg.r >= 0.0) || !std::isfinite(cfg.r)) {
    throw ConfigError("r >= 0 violated (r = " + num(cfg.r) + ")");
  }
  if (cfg.replications < 2) {
    throw ConfigError("replications >= 2 violated (replications = " +
                      std::to_string(cfg.replications) + ")");
  }
  if (cfg.estimator != "proposed" && cfg.estimator != "naive_debiased" &&
      cfg.estimator != "crude") {
    throw ConfigError("estimator must be proposed, naive_debiased or crude (got '" +
                      cfg.estimator + "')");
  }
  if (cfg.estimator == "crude" && cfg.crude_m < 1) {
    throw ConfigError("crude truncation m >= 1 violated");
  }
  if (cfg.output != "csv" && cfg.output != "pretty") {
    throw ConfigError("output must be 'csv' or 'pretty' (got '" + cfg.output + "')");
  }
}

std::vector<std::string> warnings(const RunConfig& cfg) {
  std::vector<std::string> out;
  if (r_warning_applies(cfg)) {
    out.push_back("warning: r = " + num(cfg.r) +
                  " <= 1: bounded relative error is unproven for r <= 1 "
                  "(estimates remain unbiased)");
  }
  return out;
}

Distribution make_distribution(const RunConfig& cfg) {
  return cfg.distribution == "centered_pareto" ? Distribution::centered_pareto(cfg.alpha)
                                               : Distribution::pareto(cfg.alpha);
}

CoefficientSequence make_sequence(const RunConfig& cfg) {
  return cfg.coefficients == "polynomial" ? CoefficientSequence::polynomial(cfg.poly_c, cfg.poly_s)
                                          : CoefficientSequence::geometric(cfg.rho);
}

EstimatorChoice make_estimator(const RunConfig& cfg) {
  if (cfg.estimator == "naive_debiased") return EstimatorChoice::naive_debiased();
  if (cfg.estimator == "crude") return EstimatorChoice::crude_truncated(cfg.crude_m);
  return EstimatorChoice::proposed();
}

std::vector<ResultRow> cmd_estimate(const RunConfig& cfg) {
  validate(cfg);
  const Distribution dist = make_distribution(cfg);
  const CoefficientSequence seq = make_sequence(cfg);
  const EstimatorChoice choice = make_estimator(cfg);
  std::vector<ResultRow> rows;
  for (std::size_t k = 0; k < cfg.b_values.size(); ++k) {
    const double b = cfg.b_values[k];
    Problem problem{dist, seq, b};
    if (cfg.normalize) {
      try {
        problem = normalize_problem(problem);
      } catch (const std::domain_error& e) {
        throw ConfigError(e.what());
      }
    }
    RunOptions opts;
    opts.threads = cfg.threads;
    opts.stream = k;
    RunStats stats = run(choice, problem, cfg.r, cfg.replications, cfg.seed, opts);
    if (!cfg.timing) stats.wall_seconds = 0.0;
    rows.push_back({b, asymptotic(b, dist, seq), stats});
  }
  return rows;
}

std::string format_sci(double value, int significant) {
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), value,
                                 std::chars_format::scientific, significant - 1);
  return std::string(buf.data(), res.ptr);
}

void write_csv(std::ostream& os, const std::vector<ResultRow>& rows, bool timing) {
  os << "b,asymptotic,estimate,std_error,cv,mean_n,total_work,wall_seconds\n";
  for (const auto& row : rows) {
    os << format_sci(row.b) << ',' << format_sci(row.asymptotic) << ','
       << format_sci(row.stats.mean) << ',' << format_sci(row.stats.std_error) << ','
       << format_sci(row.stats.cv) << ',' << format_sci(row.stats.mean_n) << ','
       << row.stats.total_work << ',' << format_sci(timing ? row.stats.wall_seconds : 0.0)
       << '\n';
  }
}

void write_pretty(std::ostream& os, const std::vector<ResultRow>& rows, bool timing) {
  const std::array<const char*, 8> head = {"b",  "asymptotic", "estimate",   "std_error",
                                           "cv", "mean_n",     "total_work", "wall_s"};
  for (const char* h : head) os << std::setw(14) << h;
  os << '\n';
  for (const auto& row : rows) {
    os << std::setw(14) << format_sci(row.b, 4) << std::setw(14) << format_sci(row.asymptotic, 4)
       << std::setw(14) << format_sci(row.stats.mean, 4) << std::setw(14)
       << format_sci(row.stats.std_error, 4) << std::setw(14) << format_sci(row.stats.cv, 3)
       << std::setw(14) << format_sci(row.stats.mean_n, 4) << std::setw(14)
       << row.stats.total_work << std::setw(14)
       << format_sci(timing ? row.stats.wall_seconds : 0.0, 3) << '\n';
  }
}

void write_table(std::ostream& os, const std::vector<ResultRow>& rows) {
  os << std::left << std::setw(8) << "b" << " | " << std::setw(10) << "Asymptotic" << " | "
     << std::setw(10) << "Estimate" << " | " << std::setw(14) << "Standard Error" << " | "
     << "CV" << '\n';
  os << std::string(60, '-') << '\n';
  for (const auto& row : rows) {
    std::ostringstream b;
    b.imbue(std::locale::classic());
    b << row.b;
    std::array<char, 32> cv{};
    const auto res = std::to_chars(cv.data(), cv.data() + cv.size(), row.stats.cv,
                                   std::chars_format::fixed, 2);
    os << std::setw(8) << b.str() << " | " << std::setw(10) << format_sci(row.asymptotic, 3)
       << " | " << std::setw(10) << format_sci(row.stats.mean, 3) << " | " << std::setw(14)
       << format_sci(row.stats.std_error, 3) << " | " << std::string(cv.data(), res.ptr) << '\n';
  }
  os << std::right;
}

ChiSquare chi_square_levels(const std::vector<std::uint64_t>& counts,
                            const std::vector<double>& probs) {
  if (counts.size() != probs.size() || counts.size() < 2) {
    throw std::invalid_argument("chi-square needs matching count/probability bins");
  }
  std::uint64_t total = 0;
  for (auto c : counts) total += c;
  const double n = static_cast<double>(total);
  double stat = 0.0;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    const double expected = n * probs[i];
    const double diff = static_cast<double>(counts[i]) - expected;
    stat += diff * diff / expected;
  }
  const unsigned dof = static_cast<unsigned>(counts.size() - 1);
  const boost::math::chi_squared_distribution<double> law(dof);
  return {stat, boost::math::cdf(boost::math::complement(law, stat)), dof};
}

std::vector<CheckResult> cmd_validate(const RunConfig& cfg, const ValidateOptions& opts) {
  validate(cfg);
  const Distribution dist = make_distribution(cfg);
  const CoefficientSequence seq = make_sequence(cfg);
  std::vector<CheckResult> out;
  auto report = [&](std::string name, bool ok, std::string detail) {
    out.push_back({std::move(name), ok, std::move(detail)});
  };

  // Local estimators against the quadrature partition p1 + p2.
  {
    LocalEstimator local(dist, seq);
    std::uint64_t stream = 100;
    for (std::size_t n : {2, 3}) {
      for (double b : {2.0, 5.0, 10.0}) {
        const auto part = oracle::local_partition(n, b, dist, seq);
        Moments m1;
        Moments m2;
        for (std::uint64_t i = 0; i < opts.local_draws; ++i) {
          Rng rng = Rng::substream(cfg.seed, stream, i);
          m1.push(local.estimator1(n, b, rng).value);
          m2.push(local.estimator2(n, b, rng).value);
        }
        ++stream;
        const double se1 = std::sqrt(m1.variance() / static_cast<double>(m1.count));
        const double se2 = std::sqrt(m2.variance() / static_cast<double>(m2.count));
        const bool ok1 = std::abs(m1.mean - part.p1.value) <= 4.0 * se1 + part.p1.error_bound;
        const bool ok2 = std::abs(m2.mean - part.p2.value) <= 4.0 * se2 + part.p2.error_bound;
        const std::string tag = "(n=" + std::to_string(n) + ", b=" + num(b) + ")";
        report("z1 unbiased " + tag, ok1,
               "mean " + format_sci(m1.mean, 6) + " vs p1 " + format_sci(part.p1.value, 6) +
                   " (se " + format_sci(se1, 3) + ")");
        report("z2 unbiased " + tag, ok2,
               "mean " + format_sci(m2.mean, 6) + " vs p2 " + format_sci(part.p2.value, 6) +
                   " (se " + format_sci(se2, 3) + ")");
      }
    }
  }

  const double b0 = cfg.b_values.front();
  const OuterLaw law(seq, dist.alpha(), b0, cfg.r);

  // Normalization and pmf/cdf consistency.
  {
    constexpr std::size_t kTerms = 10000;
    double sum = 0.0;
    double worst = 0.0;
    for (std::size_t n = 1; n <= kTerms; ++n) {
      const double p = law.pmf(n);
      sum += p;
      worst = std::max(worst, std::abs((law.cdf(n) - law.cdf(n - 1)) - p));
    }
    const double gap = std::abs(sum + law.survival_bound(kTerms) - 1.0);
    report("pmf normalization", gap < 1e-10, "|sum p_n + tail bound - 1| = " + format_sci(gap, 3));
    report("pmf/cdf consistency", worst < 1e-12, "max deviation " + format_sci(worst, 3));
  }

  // Level law goodness of fit and E[N].
  {
    constexpr std::size_t kBins = 30;
    std::vector<std::uint64_t> counts(kBins + 1, 0);
    Moments levels;
    for (std::uint64_t i = 0; i < opts.level_draws; ++i) {
      Rng rng = Rng::substream(cfg.seed, 1, i);
      const std::size_t n = law.sample_level(rng);
      ++counts[std::min(n, kBins + 1) - 1];
      levels.push(static_cast<double>(n));
    }
    std::vector<double> probs(kBins + 1);
    for (std::size_t n = 1; n <= kBins; ++n) probs[n - 1] = law.pmf(n);
    probs[kBins] = law.survival(kBins);
    if (opts.corrupt_pmf) {
      probs[0] *= 1.05;
      double total = 0.0;
      for (double p : probs) total += p;
      for (double& p : probs) p /= total;
    }
    const ChiSquare chi = chi_square_levels(counts, probs);
    report("level law chi-square", chi.p_value > 1e-3,
           "statistic " + format_sci(chi.statistic, 4) + ", dof " +
               std::to_string(chi.degrees_of_freedom) + ", p-value " + format_sci(chi.p_value, 3));
    const double se = std::sqrt(levels.variance() / static_cast<double>(levels.count));
    const double expected = law.expected_level();
    report("mean level E[N]", std::abs(levels.mean - expected) <= 3.0 * se,
           "empirical " + format_sci(levels.mean, 6) + " vs closed form " +
               format_sci(expected, 6) + " (se " + format_sci(se, 3) + ")");
  }

  // Z(b) against crude Monte Carlo on a long truncation. With uncentered
  // increments P{S > 5} is trivially 1 for the default weights, so the
  // centered variant is checked as well.
  std::vector<Distribution> z_dists{dist};
  if (dist.kind() == Distribution::Kind::Pareto) z_dists.push_back(dist.centered());
  std::uint64_t z_stream = 2;
  for (const Distribution& d : z_dists) {
    constexpr double kB = 5.0;
    constexpr std::size_t kTrunc = 200;
    const Problem problem{d, seq, kB};
    RunOptions ro;
    ro.threads = cfg.threads;
    ro.stream = z_stream++;
    const RunStats z = run(EstimatorChoice::proposed(), problem, cfg.r, opts.outer_draws,
                           cfg.seed, ro);
    const auto mc = oracle::tail_trunc_plain_mc(kTrunc, kB, d, seq, opts.outer_draws, cfg.seed,
                                                100 + ro.stream);
    const double combined = std::sqrt(z.std_error * z.std_error + mc.std_error * mc.std_error);
    const bool ok = std::abs(z.mean - mc.value) <= 4.0 * combined + mc.truncation_remainder;
    report("Z(b) unbiased (" + std::string(d.name()) + ", b=5)", ok,
           "estimate " + format_sci(z.mean, 6) + " vs plain MC " + format_sci(mc.value, 6) +
               " (combined se " + format_sci(combined, 3) + ")");
  }
  return out;
}

}  // namespace tailsum::cli
