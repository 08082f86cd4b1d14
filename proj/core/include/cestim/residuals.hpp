#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cestim/centrality.hpp"
#include "cestim/data.hpp"
#include "cestim/estimate.hpp"
#include "cestim/models.hpp"

namespace cestim {

/// Mean order and family of the residual measure. beta = 0 is the geometric
/// limit of the Hölder family; |beta| > beta_cap is the exact max/min.
struct ResidualQuery {
  double beta = 2.0;
  CentralityKind kind = CentralityKind::Holder;
  double beta_cap = kDefaultAlphaCap;
};

/// |d_i - h(x_i | θ)|. Throws MissingDensities when the sample has none.
std::vector<double> absolute_residuals(const WeightedSample& sample, const PdfModel& model,
                                       double theta);

/// Weighted Hölder mean of non-negative values (zeros allowed).
double holder_mean(std::span<const double> values, std::span<const double> weights, double p,
                   double cap = kDefaultAlphaCap);
/// Weighted Lehmer mean of non-negative values; 0 when every value is 0.
double lehmer_mean(std::span<const double> values, std::span<const double> weights, double p,
                   double cap = kDefaultAlphaCap);

/// e_H: Hölder mean of order beta of the absolute residuals (beta = 2 is RMS).
double residual_holder(const WeightedSample& sample, const PdfModel& model, double theta,
                       double beta);
/// e_L: Lehmer mean of order beta of the absolute residuals.
double residual_lehmer(const WeightedSample& sample, const PdfModel& model, double theta,
                       double beta);
double residual(const WeightedSample& sample, const PdfModel& model, double theta,
                const ResidualQuery& query);

enum class FitStatus { Ok, NoMaximum, Failed };
std::string_view to_string(FitStatus s) noexcept;

struct FitEntry {
  double alpha = 0.0;
  FitStatus status = FitStatus::Failed;
  // Set when status == Ok: the minimal-residual maximum at this α.
  std::optional<double> theta_star;
  std::optional<double> residual;
  std::optional<double> observed_fisher;
  Classification classification = Classification::Undetermined;
  std::size_t critical_points = 0;  // all critical points found at this α
  std::string message;              // failure detail
};

struct FitReport {
  std::string model;
  CentralityKind kind = CentralityKind::Holder;
  ResidualQuery residual;
  std::vector<FitEntry> entries;    // one per requested α, in grid order
  std::size_t best = 0;             // index into entries
  std::string selection_rule;
  bool mle_alpha_present = false;
  std::optional<double> mle_residual;

  const FitEntry& best_entry() const { return entries.at(best); }
};

/// Uniform grid of `steps` points on [lo, hi] with 0 inserted when it lies
/// inside; sorted, duplicates removed. steps == 0 yields an empty grid.
std::vector<double> make_alpha_grid(double lo, double hi, std::size_t steps);
/// 81 points on [-2, 2] plus 0.
std::vector<double> default_alpha_grid();

/// For each α: locate critical points, keep maxima, score each by the
/// requested residual and keep the smallest. The global best is the smallest
/// residual over the grid (ties: earlier in the grid). α values are fitted
/// concurrently; the report is assembled in grid order.
///
/// Throws InvalidArgument for an empty or non-finite grid, MissingDensities
/// when the sample has no densities and AllFitsFailed when no α yields a
/// maximum.
FitReport sweep_alpha(const WeightedSample& sample, const PdfModel& model,
                      std::span<const double> alpha_grid, CentralityKind kind,
                      const ResidualQuery& residual_query, const SolverConfig& config = {},
                      double epsilon = 1.0);

}  // namespace cestim
