#include "cestim/residuals.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "cestim/error.hpp"
#include "cestim/log_math.hpp"
#include "cestim/parallel.hpp"

namespace cestim {

namespace {

std::vector<double> logs_of(std::span<const double> values) {
  std::vector<double> out(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!(values[i] >= 0.0)) fail(ErrorCode::InvalidArgument, "mean of negative value");
    out[i] = std::log(values[i]);  // log(0) == -inf is handled by the kernels
  }
  return out;
}

}  // namespace

std::vector<double> absolute_residuals(const WeightedSample& sample, const PdfModel& model,
                                       double theta) {
  if (!sample.has_densities()) {
    fail(ErrorCode::MissingDensities, "residuals need observed densities");
  }
  std::vector<double> out(sample.size());
  for (std::size_t i = 0; i < sample.size(); ++i) {
    out[i] = std::abs(sample.densities()[i] - std::exp(model.log_pdf(sample.points()[i], theta)));
  }
  return out;
}

double holder_mean(std::span<const double> values, std::span<const double> weights, double p,
                   double cap) {
  return std::exp(log_holder_mean(logs_of(values), weights, p, cap));
}

double lehmer_mean(std::span<const double> values, std::span<const double> weights, double p,
                   double cap) {
  return std::exp(log_lehmer_mean(logs_of(values), weights, p, cap));
}

double residual_holder(const WeightedSample& sample, const PdfModel& model, double theta,
                       double beta) {
  return holder_mean(absolute_residuals(sample, model, theta), sample.weights(), beta);
}

double residual_lehmer(const WeightedSample& sample, const PdfModel& model, double theta,
                       double beta) {
  return lehmer_mean(absolute_residuals(sample, model, theta), sample.weights(), beta);
}

double residual(const WeightedSample& sample, const PdfModel& model, double theta,
                const ResidualQuery& query) {
  const std::vector<double> r = absolute_residuals(sample, model, theta);
  return query.kind == CentralityKind::Holder
             ? holder_mean(r, sample.weights(), query.beta, query.beta_cap)
             : lehmer_mean(r, sample.weights(), query.beta, query.beta_cap);
}

std::string_view to_string(FitStatus s) noexcept {
  switch (s) {
    case FitStatus::Ok: return "ok";
    case FitStatus::NoMaximum: return "no_maximum";
    case FitStatus::Failed: return "failed";
  }
  return "failed";
}

std::vector<double> make_alpha_grid(double lo, double hi, std::size_t steps) {
  if (steps == 0) return {};
  if (!std::isfinite(lo) || !std::isfinite(hi) || hi < lo) {
    fail(ErrorCode::InvalidArgument, "alpha range must be finite with min <= max");
  }
  std::vector<double> grid;
  grid.reserve(steps + 1);
  if (steps == 1) {
    grid.push_back(lo);
  } else {
    for (std::size_t i = 0; i < steps; ++i) {
      grid.push_back(lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(steps - 1));
    }
  }
  if (lo <= 0.0 && hi >= 0.0) grid.push_back(0.0);
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  return grid;
}

std::vector<double> default_alpha_grid() { return make_alpha_grid(-2.0, 2.0, 81); }

FitReport sweep_alpha(const WeightedSample& sample, const PdfModel& model,
                      std::span<const double> alpha_grid, CentralityKind kind,
                      const ResidualQuery& residual_query, const SolverConfig& config,
                      double epsilon) {
  if (alpha_grid.empty()) fail(ErrorCode::InvalidArgument, "alpha grid is empty");
  for (double a : alpha_grid) {
    if (!std::isfinite(a)) fail(ErrorCode::InvalidArgument, "alpha grid has a non-finite value");
  }
  if (!sample.has_densities()) {
    fail(ErrorCode::MissingDensities, "sweep needs observed densities for residuals");
  }

  FitReport report;
  report.model = std::string(model.name());
  report.kind = kind;
  report.residual = residual_query;
  report.selection_rule =
      "per alpha: maxima of the " + std::string(to_string(kind)) +
      " centrality scored by the " + std::string(to_string(residual_query.kind)) +
      " residual mean of order beta; best = smallest residual over the grid";
  report.entries.resize(alpha_grid.size());

  parallel_for(alpha_grid.size(), [&](std::size_t k) {
    FitEntry& entry = report.entries[k];
    entry.alpha = alpha_grid[k];
    try {
      const CentralityQuery q{kind, alpha_grid[k], epsilon, kDefaultAlphaCap};
      const std::vector<CriticalPoint> points = find_critical_points(sample, model, q, config);
      entry.critical_points = points.size();
      std::optional<std::size_t> pick;
      double pick_residual = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < points.size(); ++i) {
        if (points[i].classification != Classification::Maximum) continue;
        const double r = residual(sample, model, points[i].theta_star, residual_query);
        if (!pick || r < pick_residual ||
            (r == pick_residual && points[i].theta_star < points[*pick].theta_star)) {
          pick = i;
          pick_residual = r;
        }
      }
      if (!pick) {
        entry.status = FitStatus::NoMaximum;
        entry.message = points.empty() ? "no critical point in bracket" : "no maximum";
        return;
      }
      entry.status = FitStatus::Ok;
      entry.theta_star = points[*pick].theta_star;
      entry.residual = pick_residual;
      entry.observed_fisher = points[*pick].observed_fisher;
      entry.classification = Classification::Maximum;
    } catch (const Error& e) {
      if (e.is_input_error()) throw;
      entry.status = FitStatus::Failed;
      entry.message = e.what();
    }
  });

  std::optional<std::size_t> best;
  for (std::size_t k = 0; k < report.entries.size(); ++k) {
    const FitEntry& e = report.entries[k];
    if (e.status != FitStatus::Ok) continue;
    if (!best || *e.residual < *report.entries[*best].residual) best = k;
    if (e.alpha == 0.0) {
      report.mle_alpha_present = true;
      report.mle_residual = e.residual;
    }
  }
  if (!best) fail(ErrorCode::AllFitsFailed, "no alpha in the grid produced a maximum");
  report.best = *best;
  for (const FitEntry& e : report.entries) {
    if (e.alpha == 0.0) report.mle_alpha_present = true;
  }
  return report;
}

}  // namespace cestim
