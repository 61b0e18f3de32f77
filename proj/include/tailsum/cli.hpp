#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "tailsum/coefficients.hpp"
#include "tailsum/distribution.hpp"
#include "tailsum/runner.hpp"

namespace tailsum::cli {

inline constexpr std::uint64_t kDefaultSeed = 0x5eed2017ULL;

/// Everything a command needs. Keys of the config file mirror these names.
struct RunConfig {
  std::string distribution = "pareto";  ///< pareto | centered_pareto
  double alpha = 4.0;
  std::string coefficients = "geometric";  ///< geometric | polynomial
  double rho = 0.9;
  double poly_c = 0.5;
  double poly_s = 3.0;
  std::vector<double> b_values = {200.0, 500.0, 1000.0};
  double r = 1.0;
  std::uint64_t replications = 10000;
  std::uint64_t seed = kDefaultSeed;
  std::string estimator = "proposed";  ///< proposed | naive_debiased | crude
  std::size_t crude_m = 200;
  std::string output = "csv";  ///< csv | pretty
  unsigned threads = 1;
  bool normalize = false;
  bool timing = true;  ///< false writes 0 into wall_seconds
};

/// A violated configuration invariant; maps to exit status 2.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidationFailed = 1;
inline constexpr int kExitConfigError = 2;

/// Throws ConfigError naming the first violated invariant.
void validate(const RunConfig& cfg);
/// Non-fatal notes (e.g. r <= 1 lies outside the proven efficiency regime).
std::vector<std::string> warnings(const RunConfig& cfg);

Distribution make_distribution(const RunConfig& cfg);
CoefficientSequence make_sequence(const RunConfig& cfg);
EstimatorChoice make_estimator(const RunConfig& cfg);

struct ResultRow {
  double b;
  double asymptotic;
  RunStats stats;
};

std::vector<ResultRow> cmd_estimate(const RunConfig& cfg);

/// Locale-independent scientific notation with `significant` digits.
std::string format_sci(double value, int significant = 9);

/// b,asymptotic,estimate,std_error,cv,mean_n,total_work,wall_seconds
void write_csv(std::ostream& os, const std::vector<ResultRow>& rows, bool timing = true);
void write_pretty(std::ostream& os, const std::vector<ResultRow>& rows, bool timing = true);
/// b | Asymptotic | Estimate | Standard Error | CV
void write_table(std::ostream& os, const std::vector<ResultRow>& rows);

struct ValidateOptions {
  /// Negative control: compare sampled levels against a perturbed pmf.
  bool corrupt_pmf = false;
  std::uint64_t local_draws = 100000;
  std::uint64_t level_draws = 1000000;
  std::uint64_t outer_draws = 100000;
};

struct CheckResult {
  std::string name;
  bool passed;
  std::string detail;
};

std::vector<CheckResult> cmd_validate(const RunConfig& cfg, const ValidateOptions& opts = {});

/// Pearson statistic of observed level counts against a pmf on bins
/// {1..bins} plus one bucket for everything above, and its p-value.
struct ChiSquare {
  double statistic;
  double p_value;
  unsigned degrees_of_freedom;
};
ChiSquare chi_square_levels(const std::vector<std::uint64_t>& counts_by_bin,
                            const std::vector<double>& bin_probabilities);

}  // namespace tailsum::cli
