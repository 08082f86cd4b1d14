#include "cestim/cli.hpp"

#include <CLI11.hpp>
#include <cctype>
#include <cmath>
#include <filesystem>
#include <ostream>

#include "cestim/error.hpp"
#include "cestim/models.hpp"

namespace cestim::cli {

namespace {

void require(bool ok, const std::string& message) {
  if (!ok) fail(ErrorCode::InvalidArgument, message);
}

bool positive_finite(double v) { return v > 0.0 && std::isfinite(v); }

void add_input(CLI::App* app, RunConfig& c, const char* what) {
  app->add_option("input", c.inputs, what)->required()->expected(1);
}

void add_model_options(CLI::App* app, RunConfig& c) {
  app->add_option("--model", c.model, "PDF family")
      ->check(CLI::IsMember(model_ids()))
      ->capture_default_str();
  app->add_option("--kind", c.kind, "centrality: holder or lehmer")
      ->check(CLI::IsMember({"holder", "lehmer"}, CLI::ignore_case))
      ->capture_default_str();
  app->add_option("--epsilon", c.epsilon, "cell size")->capture_default_str();
  app->add_option("--tol", c.tol, "solver tolerance")->capture_default_str();
  app->add_option("--max-iter", c.max_iter, "fixed-point iteration cap")->capture_default_str();
  app->add_option("--theta-min", c.theta_min, "lower end of the theta bracket");
  app->add_option("--theta-max", c.theta_max, "upper end of the theta bracket");
}

void add_alpha_grid(CLI::App* app, RunConfig& c) {
  app->add_option("--alpha-min", c.alpha_min)->capture_default_str();
  app->add_option("--alpha-max", c.alpha_max)->capture_default_str();
  app->add_option("--alpha-steps", c.alpha_steps, "number of uniform grid points")
      ->capture_default_str();
}

void add_residual_options(CLI::App* app, RunConfig& c) {
  app->add_option("--beta", c.beta, "residual mean order")->capture_default_str();
  app->add_option("--residual", c.residual, "residual mean family: holder or lehmer")
      ->check(CLI::IsMember({"holder", "lehmer"}, CLI::ignore_case))
      ->capture_default_str();
}

void add_format(CLI::App* app, RunConfig& c) {
  app->add_option("--format", c.format)->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
}

CLI::Option* add_out(CLI::App* app, RunConfig& c,
                     const char* what = "output file (default stdout)") {
  return app->add_option("--out", c.out, what);
}

void build(CLI::App& app, RunConfig& c) {
  app.require_subcommand(1);

  auto* fit = app.add_subcommand("fit", "critical points of C_alpha(theta) for one alpha");
  add_input(fit, c, "histogram CSV");
  add_model_options(fit, c);
  fit->add_option("--alpha", c.alpha)->capture_default_str();
  add_format(fit, c);
  add_out(fit, c);

  auto* sweep = app.add_subcommand("sweep", "best C-estimator over an alpha grid");
  add_input(sweep, c, "histogram CSV");
  add_model_options(sweep, c);
  add_alpha_grid(sweep, c);
  add_residual_options(sweep, c);
  add_format(sweep, c);
  add_out(sweep, c);

  auto* batch = app.add_subcommand("batch", "sweep every histogram CSV in a directory");
  add_input(batch, c, "directory of histogram CSVs");
  add_model_options(batch, c);
  add_alpha_grid(batch, c);
  add_residual_options(batch, c);
  add_format(batch, c);
  add_out(batch, c, "output directory")->required();

  auto* surface = app.add_subcommand("surface", "log centrality over an (alpha, theta) grid");
  add_input(surface, c, "histogram CSV");
  add_model_options(surface, c);
  add_alpha_grid(surface, c);
  surface->add_option("--theta-steps", c.theta_steps, "log-spaced theta points")
      ->capture_default_str();
  add_out(surface, c, "surface CSV; the critical-point overlay goes next to it");

  auto* synth = app.add_subcommand("synth", "synthetic exponential histogram");
  synth->add_option("--theta", c.theta)->capture_default_str();
  synth->add_option("--n", c.n)->capture_default_str();
  synth->add_option("--contamination", c.contamination)->capture_default_str();
  synth->add_option("--outlier-scale", c.outlier_scale)->capture_default_str();
  synth->add_option("--seed", c.seed)->capture_default_str();
  synth->add_option("--bins", c.bins)->capture_default_str();
  add_out(synth, c);

  auto* dct = app.add_subcommand("dct-hist", "histogram of |DCT| coefficients of a PGM image");
  add_input(dct, c, "binary PGM (P5)");
  dct->add_option("--bins", c.bins)->capture_default_str();
  dct->add_flag("--exclude-dc,!--include-dc", c.exclude_dc, "drop the DC term of each block");
  add_out(dct, c);

  auto* resid = app.add_subcommand("resid-dist", "density curve of a residual statistic");
  resid->add_option("--kind", c.kind)
      ->check(CLI::IsMember({"holder", "lehmer"}, CLI::ignore_case))
      ->capture_default_str();
  resid->add_option("--beta", c.beta)->capture_default_str();
  resid->add_option("--n", c.n, "number of residuals")->capture_default_str();
  resid->add_option("--sigma", c.sigma, "error scale; derives mean-y and var-y");
  resid->add_option("--mean-y", c.mean_y);
  resid->add_option("--var-y", c.var_y);
  resid->add_option("--mu-b", c.mu_b);
  resid->add_option("--mu-b1", c.mu_b1);
  resid->add_option("--sigma-b", c.sigma_b);
  resid->add_option("--sigma-b1", c.sigma_b1);
  resid->add_option("--z-max", c.z_max);
  resid->add_option("--points", c.points)->capture_default_str();
  add_out(resid, c);
}

}  // namespace

void validate(const RunConfig& c) {
  const std::string& sub = c.subcommand;
  const bool fitting = sub == "fit" || sub == "sweep" || sub == "batch" || sub == "surface";
  if (fitting) {
    require(positive_finite(c.epsilon), "--epsilon must be positive");
    require(positive_finite(c.tol), "--tol must be positive");
    require(c.max_iter > 0, "--max-iter must be positive");
    require(c.theta_min.has_value() == c.theta_max.has_value(),
            "--theta-min and --theta-max go together");
    if (c.theta_min) {
      require(positive_finite(*c.theta_min) && std::isfinite(*c.theta_max) &&
                  *c.theta_max > *c.theta_min,
              "theta bracket must satisfy 0 < theta-min < theta-max");
    }
    require(std::isfinite(c.alpha), "--alpha must be finite");
  }
  if (sub == "sweep" || sub == "batch" || sub == "surface") {
    require(std::isfinite(c.alpha_min) && std::isfinite(c.alpha_max) && c.alpha_min <= c.alpha_max,
            "alpha range must be finite with --alpha-min <= --alpha-max");
    require(c.alpha_steps > 0, "alpha grid is empty");
  }
  if (sub == "sweep" || sub == "batch") require(std::isfinite(c.beta), "--beta must be finite");
  if (sub == "surface") require(c.theta_steps >= 2, "--theta-steps must be at least 2");
  if (sub == "synth") {
    require(positive_finite(c.theta), "--theta must be positive");
    require(c.n >= 1, "--n must be at least 1");
    require(c.contamination >= 0.0 && c.contamination < 1.0, "--contamination must lie in [0, 1)");
    require(positive_finite(c.outlier_scale), "--outlier-scale must be positive");
  }
  if (sub == "synth" || sub == "dct-hist") require(c.bins >= 1, "--bins must be positive");
  if (sub == "resid-dist") {
    require(c.points >= 2, "--points must be at least 2");
    if (c.z_max) require(positive_finite(*c.z_max), "--z-max must be positive");
    if (c.kind == "holder") {
      require(positive_finite(c.beta), "--beta must be positive");
      require(c.n >= 1, "--n must be at least 1");
      require(c.sigma.has_value() != (c.mean_y.has_value() && c.var_y.has_value()),
              "give either --sigma or both --mean-y and --var-y");
    } else {
      require(c.mu_b && c.mu_b1 && c.sigma_b && c.sigma_b1,
              "lehmer needs --mu-b, --mu-b1, --sigma-b and --sigma-b1");
    }
  }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig c;
  CLI::App app{"Hölder and Lehmer centrality estimators", "cestim"};
  build(app, c);
  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInputError;
  }
  c.subcommand = app.get_subcommands().front()->get_name();
  for (std::string* s : {&c.kind, &c.residual}) {
    for (char& ch : *s) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
  }

  try {
    validate(c);
    if (c.subcommand == "fit") return cmd_fit(c, out, err);
    if (c.subcommand == "sweep") return cmd_sweep(c, out, err);
    if (c.subcommand == "batch") return cmd_batch(c, out, err);
    if (c.subcommand == "surface") return cmd_surface(c, out, err);
    if (c.subcommand == "synth") return cmd_synth(c, out, err);
    if (c.subcommand == "dct-hist") return cmd_dct_hist(c, out, err);
    return cmd_resid_dist(c, out, err);
  } catch (const Error& e) {
    err << "cestim: " << to_string(e.code()) << ": " << e.what() << '\n';
    return e.is_input_error() ? kInputError : kComputeError;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "cestim: " << e.what() << '\n';
    return kInputError;
  } catch (const std::exception& e) {
    err << "cestim: " << e.what() << '\n';
    return kComputeError;
  }
}

}  // namespace cestim::cli
