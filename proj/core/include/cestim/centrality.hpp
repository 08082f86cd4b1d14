#pragma once

#include <span>
#include <string_view>
#include <vector>

#include "cestim/data.hpp"
#include "cestim/models.hpp"

namespace cestim {

enum class CentralityKind { Holder, Lehmer };

std::string_view to_string(CentralityKind kind) noexcept;
/// "holder" or "lehmer" (case-insensitive); throws InvalidArgument otherwise.
CentralityKind parse_centrality_kind(std::string_view text);

inline constexpr double kDefaultAlphaCap = 50.0;
/// Below this |α| the Hölder centrality uses its geometric-mean limit.
inline constexpr double kAlphaZeroGuard = 1e-12;

/// Selects which centrality C_α(θ) is evaluated. epsilon is the cell size
/// converting densities to probabilities; it only shifts log values by ln ε.
struct CentralityQuery {
  CentralityKind kind = CentralityKind::Holder;
  double alpha = 0.0;
  double epsilon = 1.0;
  double alpha_cap = kDefaultAlphaCap;
};

struct LogCentralityValue {
  double log_value;
  CentralityKind kind;
  double alpha;
  double theta;
  bool capped;  // |α| exceeded alpha_cap and the exact min/max limit was returned
};

/// ln h(x_i | θ) for every point. Throws PointOutsideSupport when a point with
/// positive weight has zero density.
std::vector<double> log_densities(const WeightedSample& sample, const PdfModel& model, double theta);

/// ln Σ λ_i h(x_i | θ)^a. Exactly 0 for a == 0.
double log_power_sum(const WeightedSample& sample, const PdfModel& model, double theta, double a);

LogCentralityValue log_holder(const WeightedSample& sample, const PdfModel& model, double theta,
                              const CentralityQuery& query);
LogCentralityValue log_lehmer(const WeightedSample& sample, const PdfModel& model, double theta,
                              const CentralityQuery& query);
/// Dispatches on query.kind.
LogCentralityValue log_centrality(const WeightedSample& sample, const PdfModel& model, double theta,
                                  const CentralityQuery& query);

/// The tilted distribution g_a,i = λ_i h_i^a / Σ_j λ_j h_j^a. Sums to 1.
std::vector<double> g_weights(const WeightedSample& sample, const PdfModel& model, double theta,
                              double a);

/// Points s with ε h(s | θ) equal to the queried centrality. Empty means the
/// centrality fell outside the range of the density, which the mean bounds
/// rule out for a consistent model.
std::vector<double> central_observation(const WeightedSample& sample, const PdfModel& model,
                                        double theta, const CentralityQuery& query);

struct SurfacePoint {
  double alpha;
  double theta;
  double log_centrality;
};

/// log C_α(θ) on the full alphas × thetas grid, α-major order. Evaluated
/// concurrently; the output order is fixed.
std::vector<SurfacePoint> centrality_surface(const WeightedSample& sample, const PdfModel& model,
                                             CentralityKind kind, std::span<const double> alphas,
                                             std::span<const double> thetas, double epsilon = 1.0,
                                             double alpha_cap = kDefaultAlphaCap);

}  // namespace cestim
