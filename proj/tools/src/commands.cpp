#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <json.hpp>
#include <ostream>
#include <sstream>

#include "cestim/cestim.hpp"
#include "cestim/cli.hpp"
#include "cestim/parallel.hpp"

namespace cestim::cli {

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

namespace {

WeightedSample load_sample(const std::string& path) {
  return histogram_to_sample(read_histogram_csv_file(path));
}

SolverConfig solver_config(const RunConfig& c) {
  SolverConfig s;
  s.tol = c.tol;
  s.max_iter = c.max_iter;
  if (c.theta_min && c.theta_max) s.theta_bracket = Interval{*c.theta_min, *c.theta_max};
  return s;
}

CentralityQuery centrality_query(const RunConfig& c, double alpha) {
  return {parse_centrality_kind(c.kind), alpha, c.epsilon, kDefaultAlphaCap};
}

ResidualQuery residual_query(const RunConfig& c) {
  ResidualQuery q;
  q.beta = c.beta;
  q.kind = parse_centrality_kind(c.residual);
  return q;
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) fail(ErrorCode::InvalidArgument, "cannot write " + path.string());
  f << text;
  if (!f) fail(ErrorCode::InvalidArgument, "write failed for " + path.string());
}

// Output is assembled in memory first so failures never leave partial files.
void emit(const RunConfig& c, std::ostream& out, const std::string& text) {
  if (c.out.empty()) {
    out << text;
  } else {
    write_file(c.out, text);
  }
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

Json number_or_null(const std::optional<double>& v) {
  return v && std::isfinite(*v) ? Json(*v) : Json(nullptr);
}

Json critical_point_json(const CriticalPoint& cp) {
  return Json{{"kind", to_string(cp.kind)},
              {"alpha", cp.alpha},
              {"theta_star", cp.theta_star},
              {"classification", to_string(cp.classification)},
              {"second_derivative", cp.second_derivative},
              {"observed_fisher", cp.observed_fisher},
              {"solver", to_string(cp.solver)},
              {"iterations", cp.iterations},
              {"log_centrality", cp.log_centrality}};
}

std::string csv_field(const std::optional<double>& v) { return v ? format_double(*v) : ""; }

Json report_json(const FitReport& r) {
  Json entries = Json::array();
  for (const FitEntry& e : r.entries) {
    Json j{{"alpha", e.alpha},
           {"theta", number_or_null(e.theta_star)},
           {"classification", e.status == FitStatus::Ok ? Json(to_string(e.classification)) : Json(nullptr)},
           {"residual", number_or_null(e.residual)},
           {"observed_fisher", number_or_null(e.observed_fisher)},
           {"status", to_string(e.status)},
           {"critical_points", e.critical_points}};
    if (!e.message.empty()) j["message"] = e.message;
    entries.push_back(std::move(j));
  }
  const FitEntry& best = r.best_entry();
  return Json{{"model", r.model},
              {"kind", to_string(r.kind)},
              {"beta", r.residual.beta},
              {"residual_kind", to_string(r.residual.kind)},
              {"selection_rule", r.selection_rule},
              {"entries", std::move(entries)},
              {"best_alpha", best.alpha},
              {"best_theta", number_or_null(best.theta_star)},
              {"best_residual", number_or_null(best.residual)},
              {"mle_alpha_present", r.mle_alpha_present},
              {"mle_residual", number_or_null(r.mle_residual)}};
}

std::string report_csv(const FitReport& r) {
  std::ostringstream os;
  os << "alpha,theta,classification,residual,observed_fisher,status,best\n";
  for (std::size_t i = 0; i < r.entries.size(); ++i) {
    const FitEntry& e = r.entries[i];
    os << format_double(e.alpha) << ',' << csv_field(e.theta_star) << ','
       << (e.status == FitStatus::Ok ? to_string(e.classification) : "") << ','
       << csv_field(e.residual) << ',' << csv_field(e.observed_fisher) << ','
       << to_string(e.status) << ',' << (i == r.best ? 1 : 0) << '\n';
  }
  return os.str();
}

FitReport run_sweep(const RunConfig& c, const WeightedSample& sample) {
  const auto model = make_model(c.model);
  const std::vector<double> grid = make_alpha_grid(c.alpha_min, c.alpha_max, c.alpha_steps);
  return sweep_alpha(sample, *model, grid, parse_centrality_kind(c.kind), residual_query(c),
                     solver_config(c), c.epsilon);
}

std::vector<double> linspace(double lo, double hi, std::size_t n) {
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) {
    v[i] = n == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
  }
  return v;
}

std::vector<double> logspace(double lo, double hi, std::size_t n) {
  std::vector<double> v = linspace(std::log(lo), std::log(hi), n);
  for (double& x : v) x = std::exp(x);
  if (n > 1) {
    v.front() = lo;
    v.back() = hi;
  }
  return v;
}

std::string pdf_curve_csv(const std::vector<double>& z, const std::vector<double>& f) {
  std::ostringstream os;
  os << "z,f(z)\n";
  for (std::size_t i = 0; i < z.size(); ++i) os << format_double(z[i]) << ',' << format_double(f[i]) << '\n';
  return os.str();
}

}  // namespace

int cmd_fit(const RunConfig& c, std::ostream& out, std::ostream&) {
  const WeightedSample sample = load_sample(c.inputs.at(0));
  const auto model = make_model(c.model);
  const CentralityQuery q = centrality_query(c, c.alpha);
  const SolverConfig config = solver_config(c);

  std::vector<CriticalPoint> points = find_critical_points(sample, *model, q, config);
  std::optional<CriticalPoint> selected;
  if (model->name() == "exponential") {
    try {
      selected = fixed_point_exponential(sample, q, config);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::NoConvergence) throw;
    }
    if (selected && config.theta_bracket && !config.theta_bracket->contains(selected->theta_star)) {
      selected.reset();
    }
    if (selected) {
      // Report the fixed-point solution in place of its bracketed twin.
      auto same = std::find_if(points.begin(), points.end(), [&](const CriticalPoint& p) {
        return std::abs(p.theta_star - selected->theta_star) <= 1e-8 * selected->theta_star;
      });
      if (same != points.end()) {
        *same = *selected;
      } else {
        points.push_back(*selected);
        std::sort(points.begin(), points.end(),
                  [](const auto& a, const auto& b) { return a.theta_star < b.theta_star; });
      }
    }
  }
  if (!selected) {
    if (const auto best = best_maximum(points)) selected = points[*best];
  }
  const bool has_maximum = selected && selected->classification == Classification::Maximum;

  if (c.format == "csv") {
    std::ostringstream os;
    os << "kind,alpha,theta_star,classification,second_derivative,observed_fisher,solver,"
          "iterations,log_centrality,selected\n";
    for (const CriticalPoint& p : points) {
      os << to_string(p.kind) << ',' << format_double(p.alpha) << ',' << format_double(p.theta_star)
         << ',' << to_string(p.classification) << ',' << format_double(p.second_derivative) << ','
         << format_double(p.observed_fisher) << ',' << to_string(p.solver) << ',' << p.iterations
         << ',' << format_double(p.log_centrality) << ','
         << (selected && p.theta_star == selected->theta_star ? 1 : 0) << '\n';
    }
    emit(c, out, os.str());
  } else {
    Json cps = Json::array();
    for (const CriticalPoint& p : points) cps.push_back(critical_point_json(p));
    Json doc{{"model", model->name()},
             {"kind", to_string(q.kind)},
             {"alpha", c.alpha},
             {"epsilon", c.epsilon},
             {"critical_points", std::move(cps)},
             {"selected", selected ? critical_point_json(*selected) : Json(nullptr)}};
    emit(c, out, dump(doc));
  }
  return has_maximum ? kOk : kComputeError;
}

int cmd_sweep(const RunConfig& c, std::ostream& out, std::ostream&) {
  const WeightedSample sample = load_sample(c.inputs.at(0));
  const FitReport report = run_sweep(c, sample);
  emit(c, out, c.format == "csv" ? report_csv(report) : dump(report_json(report)));
  return kOk;
}

int cmd_batch(const RunConfig& c, std::ostream& out, std::ostream& err) {
  const fs::path dir = c.inputs.at(0);
  if (!fs::is_directory(dir)) fail(ErrorCode::InvalidArgument, dir.string() + " is not a directory");
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".csv") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  if (files.empty()) fail(ErrorCode::InvalidArgument, "no .csv files in " + dir.string());
  const fs::path out_dir = c.out;
  fs::create_directories(out_dir);

  std::ostringstream aggregate;
  aggregate << "file,best_alpha,best_theta,best_residual,status\n";
  std::map<double, std::size_t> alpha_counts;
  std::vector<std::string> failures;
  double residual_sum = 0.0;
  std::size_t fitted = 0;
  for (const fs::path& file : files) {
    const std::string name = file.filename().string();
    try {
      const FitReport report = run_sweep(c, load_sample(file.string()));
      const FitEntry& best = report.best_entry();
      const std::string ext = c.format == "csv" ? ".csv" : ".json";
      write_file(out_dir / (file.stem().string() + ext),
                 c.format == "csv" ? report_csv(report) : dump(report_json(report)));
      aggregate << name << ',' << format_double(best.alpha) << ',' << csv_field(best.theta_star)
                << ',' << csv_field(best.residual) << ",ok\n";
      ++alpha_counts[best.alpha];
      residual_sum += *best.residual;
      ++fitted;
    } catch (const Error& e) {
      aggregate << name << ",,,,failed\n";
      failures.push_back(name + ": " + e.what());
    }
  }
  write_file(out_dir / "aggregate.csv", aggregate.str());

  std::ostringstream hist;
  hist << "selected alpha histogram (" << fitted << " fits)\n";
  for (const auto& [alpha, count] : alpha_counts) {
    std::string label = format_double(alpha);
    label.resize(std::max<std::size_t>(label.size(), 8), ' ');
    hist << label << " | " << std::string(count, '#') << ' ' << count << '\n';
  }
  write_file(out_dir / "alpha_histogram.txt", hist.str());

  out << hist.str();
  if (fitted > 0) {
    out << "mean best residual: " << format_double(residual_sum / static_cast<double>(fitted))
        << '\n';
  }
  for (const std::string& f : failures) err << "cestim: failed " << f << '\n';
  return failures.empty() ? kOk : kComputeError;
}

int cmd_surface(const RunConfig& c, std::ostream& out, std::ostream&) {
  const WeightedSample sample = load_sample(c.inputs.at(0));
  const auto model = make_model(c.model);
  const CentralityKind kind = parse_centrality_kind(c.kind);
  const Interval bracket = c.theta_min ? Interval{*c.theta_min, *c.theta_max}
                                       : model->default_theta_bracket(sample);
  const std::vector<double> alphas = linspace(c.alpha_min, c.alpha_max, c.alpha_steps);
  const std::vector<double> thetas = logspace(bracket.lower, bracket.upper, c.theta_steps);

  const auto surface = centrality_surface(sample, *model, kind, alphas, thetas, c.epsilon);
  std::ostringstream os;
  os << "alpha,theta,log_centrality\n";
  for (const SurfacePoint& p : surface) {
    os << format_double(p.alpha) << ',' << format_double(p.theta) << ','
       << format_double(p.log_centrality) << '\n';
  }

  // Critical points and the selected maximum per α (the overlay).
  std::vector<std::vector<CriticalPoint>> per_alpha(alphas.size());
  SolverConfig config = solver_config(c);
  config.theta_bracket = bracket;
  parallel_for(alphas.size(), [&](std::size_t k) {
    per_alpha[k] = find_critical_points(sample, *model, centrality_query(c, alphas[k]), config);
  });
  std::ostringstream overlay;
  overlay << "alpha,theta_star,classification,log_centrality,selected\n";
  for (const auto& points : per_alpha) {
    const auto best = best_maximum(points);
    for (std::size_t i = 0; i < points.size(); ++i) {
      overlay << format_double(points[i].alpha) << ',' << format_double(points[i].theta_star) << ','
              << to_string(points[i].classification) << ','
              << format_double(points[i].log_centrality) << ',' << (best == i ? 1 : 0) << '\n';
    }
  }

  if (c.out.empty()) {
    out << os.str();
  } else {
    fs::path overlay_path = c.out;
    overlay_path.replace_filename(overlay_path.stem().string() + "_critical.csv");
    write_file(c.out, os.str());
    write_file(overlay_path, overlay.str());
  }
  return kOk;
}

int cmd_synth(const RunConfig& c, std::ostream& out, std::ostream&) {
  SynthOptions opts;
  opts.theta = c.theta;
  opts.n = c.n;
  opts.contamination = c.contamination;
  opts.outlier_scale = c.outlier_scale;
  opts.seed = c.seed;
  opts.bins = c.bins;
  std::ostringstream os;
  write_histogram_csv(os, synth_exponential(opts));
  emit(c, out, os.str());
  return kOk;
}

int cmd_dct_hist(const RunConfig& c, std::ostream& out, std::ostream&) {
  DctHistogramOptions opts;
  opts.bins = c.bins;
  opts.exclude_dc = c.exclude_dc;
  std::ostringstream os;
  write_histogram_csv(os, dct_abs_histogram(read_pgm_file(c.inputs.at(0)), opts));
  emit(c, out, os.str());
  return kOk;
}

int cmd_resid_dist(const RunConfig& c, std::ostream& out, std::ostream&) {
  std::vector<double> z, f;
  if (parse_centrality_kind(c.kind) == CentralityKind::Holder) {
    const HolderResidualDensity d =
        c.sigma ? HolderResidualDensity::from_error_sigma(c.beta, c.n, *c.sigma)
                : HolderResidualDensity(c.beta, c.n, *c.mean_y, *c.var_y);
    const double hi = c.z_max ? *c.z_max
                              : std::pow(std::max(d.mean(), 0.0) + 10.0 * d.stddev(), 1.0 / c.beta);
    z = linspace(0.0, hi, c.points);
    for (double v : z) f.push_back(d(v));
  } else {
    const LehmerResidualDensity d(*c.mu_b, *c.mu_b1, *c.sigma_b, *c.sigma_b1);
    const double hi = c.z_max ? *c.z_max : std::max(d.center(), 0.0) + 12.0 * d.spread();
    z = linspace(0.0, hi, c.points);
    for (double v : z) f.push_back(d(v));
  }
  emit(c, out, pdf_curve_csv(z, f));
  return kOk;
}

}  // namespace cestim::cli
