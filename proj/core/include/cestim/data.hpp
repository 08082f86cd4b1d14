#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace cestim {

/// Binned counts over strictly increasing edges. Construction validates:
/// edges.size() == counts.size() + 1, strictly increasing finite edges,
/// non-negative finite counts and a positive total.
class Histogram {
 public:
  Histogram(std::vector<double> bin_edges, std::vector<double> counts);

  std::span<const double> bin_edges() const noexcept { return edges_; }
  std::span<const double> counts() const noexcept { return counts_; }
  std::size_t bin_count() const noexcept { return counts_.size(); }
  double total() const noexcept { return total_; }
  double bin_width(std::size_t i) const noexcept { return edges_[i + 1] - edges_[i]; }
  double bin_midpoint(std::size_t i) const noexcept { return 0.5 * (edges_[i] + edges_[i + 1]); }

  bool operator==(const Histogram&) const = default;

 private:
  std::vector<double> edges_;
  std::vector<double> counts_;
  double total_ = 0.0;
};

/// Observation points with normalized weights and, optionally, observed
/// densities aligned with the points.
class WeightedSample {
 public:
  /// Weights must already sum to 1 within 1e-12.
  WeightedSample(std::vector<double> points, std::vector<double> weights,
                 std::optional<std::vector<double>> densities = std::nullopt);

  /// Normalizes arbitrary non-negative weights (positive total required).
  static WeightedSample from_unnormalized(std::vector<double> points, std::vector<double> weights,
                                          std::optional<std::vector<double>> densities = std::nullopt);

  /// Equal weights 1/n.
  static WeightedSample uniform(std::vector<double> points);

  std::span<const double> points() const noexcept { return points_; }
  std::span<const double> weights() const noexcept { return weights_; }
  bool has_densities() const noexcept { return densities_.has_value(); }
  /// Empty span when no densities are attached.
  std::span<const double> densities() const noexcept {
    return densities_ ? std::span<const double>(*densities_) : std::span<const double>();
  }
  std::size_t size() const noexcept { return points_.size(); }

  /// Σ λ_i x_i.
  double weighted_mean() const noexcept;

 private:
  std::vector<double> points_;
  std::vector<double> weights_;
  std::optional<std::vector<double>> densities_;
};

/// x_i = bin midpoints, λ_i = relative frequency, d_i = counts / (total · width).
/// Zero-count bins are dropped.
WeightedSample histogram_to_sample(const Histogram& h);

struct SynthOptions {
  double theta = 1.0;          // rate of the clean component
  std::size_t n = 10000;
  double contamination = 0.0;  // fraction in [0, 1) drawn from the outlier component
  double outlier_scale = 5.0;  // outlier rate is theta / outlier_scale
  std::uint64_t seed = 0;
  std::size_t bins = 64;
};

/// The raw draws behind synth_exponential: the clean draws first, then the
/// floor(contamination · n) outliers. Deterministic for a fixed seed on every
/// platform (own inverse-CDF transform over mt19937_64).
std::vector<double> synth_exponential_draws(const SynthOptions& opts);

/// Bins `values` into `bins` equal-width bins over [0, max(values)]; a zero
/// maximum uses [0, 1]. Values must be finite and non-negative.
Histogram bin_nonnegative(std::span<const double> values, std::size_t bins);

Histogram synth_exponential(const SynthOptions& opts);

/// Histogram CSV: header `bin_left,bin_right,count`, one row per bin.
Histogram read_histogram_csv(std::istream& in);
Histogram read_histogram_csv_file(const std::string& path);
void write_histogram_csv(std::ostream& out, const Histogram& h);

/// Shortest decimal string that round-trips to the same double.
std::string format_double(double v);

}  // namespace cestim
