#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace cestim::cli {

enum ExitCode : int { kOk = 0, kInputError = 1, kComputeError = 2 };

/// Everything a subcommand needs, filled in by the parser. Fields that a
/// subcommand does not use keep their defaults.
struct RunConfig {
  std::string subcommand;
  std::vector<std::string> inputs;

  std::string model = "exponential";
  std::string kind = "holder";
  double alpha = 0.0;
  double alpha_min = -2.0;
  double alpha_max = 2.0;
  std::size_t alpha_steps = 81;
  double beta = 2.0;
  std::string residual = "holder";
  double epsilon = 1.0;

  double tol = 1e-10;
  std::size_t max_iter = 500;
  std::optional<double> theta_min;
  std::optional<double> theta_max;
  std::size_t theta_steps = 200;

  std::uint64_t seed = 0;
  std::string out;
  std::string format = "json";

  // synth
  double theta = 1.0;
  std::size_t n = 10000;
  double contamination = 0.0;
  double outlier_scale = 5.0;
  std::size_t bins = 64;

  // dct-hist
  bool exclude_dc = true;

  // resid-dist
  std::optional<double> sigma;
  std::optional<double> mean_y;
  std::optional<double> var_y;
  std::optional<double> mu_b;
  std::optional<double> mu_b1;
  std::optional<double> sigma_b;
  std::optional<double> sigma_b1;
  std::optional<double> z_max;
  std::size_t points = 1001;
};

/// Flag consistency checks shared by all subcommands; throws
/// cestim::Error(InvalidArgument) on the first violation.
void validate(const RunConfig& config);

int cmd_fit(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_sweep(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_batch(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_surface(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_synth(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_dct_hist(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_resid_dist(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Parses argv-style arguments (without the program name), runs the
/// subcommand and maps failures to exit codes with a one-line diagnostic on
/// `err`. Results go to --out when given, otherwise to `out`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cestim::cli
