// tailsum: tail probabilities of weighted heavy-tailed series by
// conditional Monte Carlo with a randomized truncation level.

#include <CLI11.hpp>
#include <cstdlib>
#include <iostream>
#include <random>
#include <string>

#include "tailsum/cli.hpp"
#include "tailsum/kernels.hpp"

namespace {

using tailsum::cli::RunConfig;

struct Flags {
  RunConfig cfg;
  std::vector<double> poly;
  bool entropy_seed = false;
  bool no_timing = false;
  bool corrupt_pmf = false;
  bool threads_given = false;
};

void add_run_options(CLI::App& app, Flags& f) {
  app.set_config("--config", "", "Key-value config file (flags win on conflict)");
  app.add_option("--dist,--distribution", f.cfg.distribution, "pareto | centered_pareto")
      ->capture_default_str();
  app.add_option("--alpha", f.cfg.alpha, "Tail index (> 2)")->capture_default_str();
  app.add_option("--coefficients", f.cfg.coefficients, "geometric | polynomial")
      ->capture_default_str();
  app.add_option("--rho", f.cfg.rho, "Geometric ratio: a_n = rho^n")->capture_default_str();
  app.add_option("--poly", f.poly, "Polynomial weights a_n = c n^-s (implies --coefficients polynomial)")
      ->expected(2)
      ->type_name("C S");
  app.add_option("--b,--b_values", f.cfg.b_values, "Threshold(s); repeatable or comma separated")
      ->delimiter(',')
      ->capture_default_str();
  app.add_option("--r", f.cfg.r, "Exponent r in p_n = c_b(a_n^alpha + a_n/b^r)")
      ->capture_default_str();
  app.add_option("--reps,--replications", f.cfg.replications, "Replications per threshold")
      ->capture_default_str();
  app.add_option("--seed", f.cfg.seed, "Base seed (fixed default for reproducible output)")
      ->capture_default_str();
  app.add_flag("--entropy-seed", f.entropy_seed, "Draw the seed from the OS entropy source");
  app.add_option("--estimator", f.cfg.estimator, "proposed | naive_debiased | crude")
      ->capture_default_str();
  app.add_option("--crude_m,--trunc", f.cfg.crude_m, "Truncation level for --estimator crude")
      ->capture_default_str();
  app.add_option("--format,--output", f.cfg.output, "csv | pretty")->capture_default_str();
  app.add_option("--threads", f.cfg.threads, "Worker threads (default: $TAILSUM_THREADS or 1)")
      ->each([&f](const std::string&) { f.threads_given = true; });
  app.add_flag("--normalize", f.cfg.normalize, "Center the increments and rescale a_n to sup 1");
  app.add_flag("--no-timing", f.no_timing, "Write 0 for wall_seconds (byte-stable output)");
}

void finalize(Flags& f) {
  if (!f.poly.empty()) {
    f.cfg.coefficients = "polynomial";
    f.cfg.poly_c = f.poly[0];
    f.cfg.poly_s = f.poly[1];
  }
  if (f.no_timing) f.cfg.timing = false;
  if (!f.threads_given) {
    if (const char* env = std::getenv("TAILSUM_THREADS")) {
      try {
        f.cfg.threads = static_cast<unsigned>(std::stoul(env));
      } catch (const std::exception&) {
        throw tailsum::cli::ConfigError(std::string("TAILSUM_THREADS is not a count: ") + env);
      }
    }
  }
  if (f.entropy_seed) {
    std::random_device rd;
    f.cfg.seed = (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
    std::cerr << "seed: " << f.cfg.seed << '\n';
  }
}

void print_warnings(const RunConfig& cfg) {
  for (const auto& w : tailsum::cli::warnings(cfg)) std::cerr << w << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Unbiased rare-event estimation of P{sum_n a_n X_n > b} for heavy-tailed X"};
  app.require_subcommand(1);
  std::string kernel_choice;
  app.add_option("--kernels", kernel_choice, "Force kernel variant: scalar | avx2");

  // Run options live on the top-level app so that a config file can use
  // flat keys; subcommands fall through to them.
  Flags flags;
  add_run_options(app, flags);
  app.fallthrough();
  auto* est = app.add_subcommand("estimate", "Estimate P{S > b} for each threshold");
  auto* table = app.add_subcommand("table", "Estimates in the Asymptotic | Estimate | SE | CV layout");
  auto* val = app.add_subcommand("validate", "Self-check the estimators against independent oracles");
  val->add_flag("--corrupt-pmf", flags.corrupt_pmf, "Negative control for the level-law check")
      ->group("");
  for (auto* sub : {est, table, val}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : tailsum::cli::kExitConfigError;
  }

  try {
    if (kernel_choice == "scalar") {
      tailsum::kernels::force_isa(tailsum::kernels::Isa::Scalar);
    } else if (kernel_choice == "avx2") {
      tailsum::kernels::force_isa(tailsum::kernels::Isa::Avx2);
    } else if (!kernel_choice.empty()) {
      throw tailsum::cli::ConfigError("--kernels must be scalar or avx2");
    }

    if (est->parsed() || table->parsed()) {
      Flags& f = flags;
      finalize(f);
      tailsum::cli::validate(f.cfg);
      print_warnings(f.cfg);
      const auto rows = tailsum::cli::cmd_estimate(f.cfg);
      if (table->parsed()) {
        tailsum::cli::write_table(std::cout, rows);
      } else if (f.cfg.output == "pretty") {
        tailsum::cli::write_pretty(std::cout, rows, f.cfg.timing);
      } else {
        tailsum::cli::write_csv(std::cout, rows, f.cfg.timing);
      }
      return tailsum::cli::kExitOk;
    }

    finalize(flags);
    tailsum::cli::validate(flags.cfg);
    print_warnings(flags.cfg);
    tailsum::cli::ValidateOptions opts;
    opts.corrupt_pmf = flags.corrupt_pmf;
    const auto checks = tailsum::cli::cmd_validate(flags.cfg, opts);
    bool all = true;
    for (const auto& c : checks) {
      std::cout << (c.passed ? "PASS " : "FAIL ") << c.name << ": " << c.detail << '\n';
      all = all && c.passed;
    }
    std::cout << (all ? "all checks passed" : "some checks FAILED") << '\n';
    return all ? tailsum::cli::kExitOk : tailsum::cli::kExitValidationFailed;
  } catch (const tailsum::cli::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return tailsum::cli::kExitConfigError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return tailsum::cli::kExitConfigError;
  }
}
