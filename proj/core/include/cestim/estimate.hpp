#pragma once

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "cestim/centrality.hpp"
#include "cestim/data.hpp"
#include "cestim/models.hpp"

namespace cestim {

enum class Classification { Maximum, Minimum, Undetermined };
enum class SolverKind { FixedPoint, Bracketed };

std::string_view to_string(Classification c) noexcept;
std::string_view to_string(SolverKind s) noexcept;

struct SolverConfig {
  double tol = 1e-10;           // relative θ change; also |∂C/∂θ| < tol · max(1, θ)
  std::size_t max_iter = 500;
  double damping = 1.0;         // γ in θ ← (1 - γ) θ + γ F(θ), in (0, 1]
  std::optional<Interval> theta_bracket;  // defaults to model.default_theta_bracket
  std::size_t grid_points = 512;          // log-spaced scan of ∂C/∂θ
  double tol_class = 1e-9;                // curvature threshold, divided by θ²
  bool global_check = true;               // fixed point: prefer a higher maximum found by scanning
};

struct CriticalPoint {
  double theta_star;
  CentralityKind kind;
  double alpha;
  double second_derivative;     // ∂²C/∂θ² at θ*
  Classification classification;
  double observed_fisher;       // always -second_derivative
  SolverKind solver;
  std::size_t iterations;
  double residual_derivative;   // |∂C/∂θ| at θ*
  double log_centrality;        // C_α(θ*), ε included
};

/// ∂C_α/∂θ of the log centrality as expectations of the score under the
/// tilted distributions g_α (and g_{α-1} for Lehmer).
double dC_dtheta(const WeightedSample& sample, const PdfModel& model, double theta,
                 const CentralityQuery& query);

/// ∂²C_α/∂θ² at a critical point.
///
///   Hölder: α E_gα[s²] + E_gα[s']
///   Lehmer: α E_gα[s'] + α² Var_gα[s] - (α-1) E_gα-1[s'] - (α-1)² Var_gα-1[s]
///
/// with s the score. Throws NotACriticalPoint when
/// |∂C/∂θ| >= critical_tol · max(1, |θ|).
double d2C_dtheta2_at_critical(const WeightedSample& sample, const PdfModel& model, double theta,
                               const CentralityQuery& query, double critical_tol = 1e-8);

/// Central second difference of the log centrality (step 1e-4 θ). Valid at any
/// θ; meant for diagnostics away from critical points.
double log_centrality_curvature_fd(const WeightedSample& sample, const PdfModel& model,
                                   double theta, const CentralityQuery& query);

/// Maximum iff d2 < -tol_class/θ², Minimum iff d2 > tol_class/θ².
Classification classify(double second_derivative, double theta, double tol_class);

/// Critical point of the exponential model via the self-consistency
/// iteration θ = 1 / Σ_i x_i w_i(θ), where w = g_α for Hölder and
/// α g_α - (α-1) g_{α-1} for Lehmer, started from the α = 0 solution
/// 1 / Σ λ_i x_i. Falls back to a bracketed scan when the iteration leaves
/// (0, ∞) or does not settle within max_iter.
///
/// Throws PointOutsideSupport for negative points, DegenerateSample when every
/// point is 0 and NoConvergence when neither route yields a critical point.
CriticalPoint fixed_point_exponential(const WeightedSample& sample, const CentralityQuery& query,
                                      const SolverConfig& config = {});

/// Every sign change of ∂C/∂θ on a log-spaced grid over the bracket, refined
/// by bisection and classified; sorted by θ. Empty when ∂C/∂θ never changes
/// sign (for instance a sample whose densities are all equal).
std::vector<CriticalPoint> find_critical_points(const WeightedSample& sample, const PdfModel& model,
                                                const CentralityQuery& query,
                                                const SolverConfig& config = {});

/// Index of the maximum with the highest centrality (ties: smaller θ).
std::optional<std::size_t> best_maximum(const std::vector<CriticalPoint>& points);

/// -second_derivative. Throws NotAMaximum unless cp is a Maximum.
double observed_fisher(const CriticalPoint& cp);

/// g_α-weighted variance of x under the exponential tilt exp(-α θ x).
double v_statistic(const WeightedSample& sample, double theta, double alpha);

}  // namespace cestim
