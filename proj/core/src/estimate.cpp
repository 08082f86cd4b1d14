#include "cestim/estimate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "cestim/error.hpp"
#include "cestim/log_math.hpp"

namespace cestim {

namespace {

// Moments of the score under one tilted distribution g_a.
struct TiltedMoments {
  double mean_score = 0.0;
  double mean_score_sq = 0.0;
  double var_score = 0.0;
  double mean_score_prime = 0.0;
};

// Precomputed per-θ quantities shared by the first and second derivatives.
struct ScoreTable {
  std::vector<double> log_density;
  std::vector<double> score;
  std::vector<double> score_prime;
};

ScoreTable score_table(const WeightedSample& sample, const PdfModel& model, double theta) {
  ScoreTable t;
  t.log_density = log_densities(sample, model, theta);
  t.score.resize(sample.size());
  t.score_prime.resize(sample.size());
  for (std::size_t i = 0; i < sample.size(); ++i) {
    t.score[i] = model.score(sample.points()[i], theta);
    t.score_prime[i] = model.score_prime(sample.points()[i], theta);
  }
  return t;
}

TiltedMoments tilted_moments(const WeightedSample& sample, const ScoreTable& t, double a) {
  const auto weights = sample.weights();
  const double norm = a == 0.0 ? 0.0 : log_power_sum(t.log_density, weights, a);
  std::vector<double> g(sample.size(), 0.0);
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (!(weights[i] > 0.0)) continue;
    g[i] = a == 0.0 ? weights[i] : std::exp(std::log(weights[i]) + a * t.log_density[i] - norm);
  }
  TiltedMoments m;
  for (std::size_t i = 0; i < g.size(); ++i) {
    m.mean_score += g[i] * t.score[i];
    m.mean_score_sq += g[i] * t.score[i] * t.score[i];
    m.mean_score_prime += g[i] * t.score_prime[i];
  }
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double d = t.score[i] - m.mean_score;
    m.var_score += g[i] * d * d;
  }
  return m;
}

double first_derivative(const WeightedSample& sample, const ScoreTable& t,
                        const CentralityQuery& q) {
  const double alpha = q.alpha;
  if (q.kind == CentralityKind::Holder) return tilted_moments(sample, t, alpha).mean_score;
  return alpha * tilted_moments(sample, t, alpha).mean_score -
         (alpha - 1.0) * tilted_moments(sample, t, alpha - 1.0).mean_score;
}

double second_derivative(const WeightedSample& sample, const ScoreTable& t,
                         const CentralityQuery& q) {
  const double alpha = q.alpha;
  const TiltedMoments ma = tilted_moments(sample, t, alpha);
  if (q.kind == CentralityKind::Holder) {
    return alpha * ma.mean_score_sq + ma.mean_score_prime;
  }
  // Differentiating ln Σλh^α - ln Σλh^(α-1) twice; at a Lehmer critical point
  // the tilted score means are not zero, so the variances stay.
  const TiltedMoments mb = tilted_moments(sample, t, alpha - 1.0);
  const double b = alpha - 1.0;
  return alpha * ma.mean_score_prime + alpha * alpha * ma.var_score - b * mb.mean_score_prime -
         b * b * mb.var_score;
}

double derivative_scale(double theta) { return std::max(1.0, std::abs(theta)); }

CriticalPoint make_point(const WeightedSample& sample, const PdfModel& model, double theta,
                         const CentralityQuery& query, const SolverConfig& config,
                         SolverKind solver, std::size_t iterations) {
  const ScoreTable t = score_table(sample, model, theta);
  const double d1 = first_derivative(sample, t, query);
  const double d2 = second_derivative(sample, t, query);
  const Classification cls = classify(d2, theta, config.tol_class);
  return CriticalPoint{theta,
                       query.kind,
                       query.alpha,
                       d2,
                       cls,
                       -d2,
                       solver,
                       iterations,
                       std::abs(d1),
                       log_centrality(sample, model, theta, query).log_value};
}

void validate_config(const SolverConfig& config) {
  if (!(config.tol > 0.0)) fail(ErrorCode::InvalidArgument, "solver tolerance must be positive");
  if (config.max_iter == 0) fail(ErrorCode::InvalidArgument, "max_iter must be positive");
  if (!(config.damping > 0.0 && config.damping <= 1.0)) {
    fail(ErrorCode::InvalidArgument, "damping must lie in (0, 1]");
  }
  if (config.grid_points < 2) fail(ErrorCode::InvalidArgument, "grid needs at least two points");
}

Interval resolve_bracket(const WeightedSample& sample, const PdfModel& model,
                         const SolverConfig& config) {
  const Interval b = config.theta_bracket ? *config.theta_bracket
                                          : model.default_theta_bracket(sample);
  const Interval domain = model.theta_domain();
  if (!(b.lower > 0.0) || !(b.upper > b.lower) || !std::isfinite(b.upper)) {
    fail(ErrorCode::InvalidArgument, "theta bracket must be a finite positive interval");
  }
  if (b.lower < domain.lower || b.upper > domain.upper) {
    fail(ErrorCode::InvalidArgument, "theta bracket lies outside the model's parameter domain");
  }
  return b;
}

struct Root {
  double theta;
  std::size_t iterations;
};

template <class F>
Root bisect(F&& f, double lo, double hi, double f_lo, double tol) {
  std::size_t it = 0;
  double mid = lo;
  for (; it < 400; ++it) {
    mid = lo + 0.5 * (hi - lo);
    if (mid <= lo || mid >= hi) break;
    const double f_mid = f(mid);
    if (f_mid == 0.0) break;
    if ((hi - lo) <= tol * mid && std::abs(f_mid) < tol * derivative_scale(mid)) break;
    if ((f_mid < 0.0) == (f_lo < 0.0)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
    }
  }
  return {mid, it + 1};
}

bool higher(const CriticalPoint& a, const CriticalPoint& b) {
  if (a.log_centrality != b.log_centrality) return a.log_centrality > b.log_centrality;
  return a.theta_star < b.theta_star;
}

}  // namespace

std::string_view to_string(Classification c) noexcept {
  switch (c) {
    case Classification::Maximum: return "maximum";
    case Classification::Minimum: return "minimum";
    case Classification::Undetermined: return "undetermined";
  }
  return "undetermined";
}

std::string_view to_string(SolverKind s) noexcept {
  return s == SolverKind::FixedPoint ? "fixed_point" : "bracketed";
}

double dC_dtheta(const WeightedSample& sample, const PdfModel& model, double theta,
                 const CentralityQuery& query) {
  return first_derivative(sample, score_table(sample, model, theta), query);
}

double d2C_dtheta2_at_critical(const WeightedSample& sample, const PdfModel& model, double theta,
                               const CentralityQuery& query, double critical_tol) {
  const ScoreTable t = score_table(sample, model, theta);
  const double d1 = first_derivative(sample, t, query);
  if (!(std::abs(d1) < critical_tol * derivative_scale(theta))) {
    fail(ErrorCode::NotACriticalPoint,
         "|dC/dtheta| = " + format_double(std::abs(d1)) + " at theta " + format_double(theta));
  }
  return second_derivative(sample, t, query);
}

double log_centrality_curvature_fd(const WeightedSample& sample, const PdfModel& model,
                                   double theta, const CentralityQuery& query) {
  const double h = 1e-4 * theta;
  const double c0 = log_centrality(sample, model, theta, query).log_value;
  const double cp = log_centrality(sample, model, theta + h, query).log_value;
  const double cm = log_centrality(sample, model, theta - h, query).log_value;
  return (cp - 2.0 * c0 + cm) / (h * h);
}

Classification classify(double second_derivative, double theta, double tol_class) {
  const double threshold = tol_class / (theta * theta);
  if (second_derivative < -threshold) return Classification::Maximum;
  if (second_derivative > threshold) return Classification::Minimum;
  return Classification::Undetermined;
}

std::vector<CriticalPoint> find_critical_points(const WeightedSample& sample, const PdfModel& model,
                                                const CentralityQuery& query,
                                                const SolverConfig& config) {
  validate_config(config);
  const Interval bracket = resolve_bracket(sample, model, config);
  log_densities(sample, model, bracket.lower);  // surfaces PointOutsideSupport up front

  const std::size_t n = config.grid_points;
  const double log_lo = std::log(bracket.lower);
  const double step = (std::log(bracket.upper) - log_lo) / static_cast<double>(n - 1);
  std::vector<double> grid(n), deriv(n);
  for (std::size_t i = 0; i < n; ++i) {
    grid[i] = i + 1 == n ? bracket.upper : std::exp(log_lo + step * static_cast<double>(i));
    deriv[i] = dC_dtheta(sample, model, grid[i], query);
  }

  auto f = [&](double theta) { return dC_dtheta(sample, model, theta, query); };
  std::vector<CriticalPoint> out;
  for (std::size_t i = 0; i < n; ++i) {
    if (!std::isfinite(deriv[i])) continue;
    if (deriv[i] == 0.0) {
      out.push_back(make_point(sample, model, grid[i], query, config, SolverKind::Bracketed, 0));
      continue;
    }
    if (i + 1 < n && std::isfinite(deriv[i + 1]) && deriv[i + 1] != 0.0 &&
        (deriv[i] < 0.0) != (deriv[i + 1] < 0.0)) {
      const Root r = bisect(f, grid[i], grid[i + 1], deriv[i], config.tol);
      out.push_back(
          make_point(sample, model, r.theta, query, config, SolverKind::Bracketed, r.iterations));
    }
  }
  return out;
}

std::optional<std::size_t> best_maximum(const std::vector<CriticalPoint>& points) {
  std::optional<std::size_t> best;
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (points[i].classification != Classification::Maximum) continue;
    if (!best || higher(points[i], points[*best])) best = i;
  }
  return best;
}

CriticalPoint fixed_point_exponential(const WeightedSample& sample, const CentralityQuery& query,
                                      const SolverConfig& config) {
  validate_config(config);
  const ExponentialModel model;
  const auto points = sample.points();
  const auto weights = sample.weights();
  bool any_positive = false;
  for (std::size_t i = 0; i < sample.size(); ++i) {
    if (!(weights[i] > 0.0)) continue;
    if (points[i] < 0.0) {
      fail(ErrorCode::PointOutsideSupport,
           "exponential model needs non-negative points, got " + format_double(points[i]));
    }
    any_positive = any_positive || points[i] > 0.0;
  }
  if (!any_positive) fail(ErrorCode::DegenerateSample, "every point is zero");

  const double alpha = query.alpha;
  auto reciprocal_target = [&](double theta) {
    const std::vector<double> ga = g_weights(sample, model, theta, alpha);
    double denom = 0.0;
    if (query.kind == CentralityKind::Holder) {
      for (std::size_t i = 0; i < ga.size(); ++i) denom += ga[i] * points[i];
    } else {
      const std::vector<double> gb = g_weights(sample, model, theta, alpha - 1.0);
      for (std::size_t i = 0; i < ga.size(); ++i) {
        denom += points[i] * (alpha * ga[i] - (alpha - 1.0) * gb[i]);
      }
    }
    return denom;
  };

  double theta = 1.0 / sample.weighted_mean();
  bool converged = false;
  std::size_t iterations = 0;
  while (iterations < config.max_iter) {
    ++iterations;
    const double denom = reciprocal_target(theta);
    if (!(denom > 0.0) || !std::isfinite(denom)) break;
    const double next = (1.0 - config.damping) * theta + config.damping / denom;
    if (!(next > 0.0) || !std::isfinite(next)) break;
    const double rel_change = std::abs(next - theta) / next;
    theta = next;
    if (rel_change < config.tol &&
        std::abs(dC_dtheta(sample, model, theta, query)) < config.tol * derivative_scale(theta)) {
      converged = true;
      break;
    }
  }

  std::optional<CriticalPoint> result;
  if (converged) {
    result = make_point(sample, model, theta, query, config, SolverKind::FixedPoint, iterations);
  }

  if (!converged || config.global_check) {
    const std::vector<CriticalPoint> scanned = find_critical_points(sample, model, query, config);
    const auto best = best_maximum(scanned);
    if (!result) {
      if (best) {
        result = scanned[*best];
      } else if (!scanned.empty()) {
        result = *std::max_element(scanned.begin(), scanned.end(),
                                   [](const auto& a, const auto& b) { return higher(b, a); });
      }
    } else if (best) {
      const CriticalPoint& candidate = scanned[*best];
      const bool distinct = std::abs(candidate.theta_star - result->theta_star) >
                            1e-6 * result->theta_star;
      const bool better = result->classification != Classification::Maximum ||
                          candidate.log_centrality > result->log_centrality;
      if (distinct && better) result = candidate;
    }
  }
  if (!result) {
    fail(ErrorCode::NoConvergence, "no critical point for " + std::string(to_string(query.kind)) +
                                       " at alpha " + format_double(alpha));
  }
  return *result;
}

double observed_fisher(const CriticalPoint& cp) {
  if (cp.classification != Classification::Maximum) {
    fail(ErrorCode::NotAMaximum, "observed C-Fisher information is defined at maxima only");
  }
  return -cp.second_derivative;
}

double v_statistic(const WeightedSample& sample, double theta, double alpha) {
  const auto points = sample.points();
  const auto weights = sample.weights();
  std::vector<double> log_w(sample.size(), -std::numeric_limits<double>::infinity());
  for (std::size_t i = 0; i < sample.size(); ++i) {
    if (weights[i] > 0.0) log_w[i] = std::log(weights[i]) - alpha * theta * points[i];
  }
  const double norm = log_sum_exp(log_w);
  double mean = 0.0;
  std::vector<double> g(sample.size());
  for (std::size_t i = 0; i < sample.size(); ++i) {
    g[i] = std::exp(log_w[i] - norm);
    mean += g[i] * points[i];
  }
  double var = 0.0;
  for (std::size_t i = 0; i < sample.size(); ++i) {
    const double d = points[i] - mean;
    var += g[i] * d * d;
  }
  return var;
}

}  // namespace cestim
