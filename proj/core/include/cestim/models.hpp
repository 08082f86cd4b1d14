#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "cestim/data.hpp"

namespace cestim {

struct Interval {
  double lower;
  double upper;

  bool contains(double v) const noexcept { return v >= lower && v <= upper; }
};

/// A one-parameter family of densities h(x | θ).
///
/// log_pdf is the primitive: every centrality is evaluated from it in the log
/// domain. Points outside the support have log_pdf == -inf. score and
/// score_prime are the first and second θ-derivatives of log_pdf.
class PdfModel {
 public:
  virtual ~PdfModel() = default;

  virtual std::string_view name() const noexcept = 0;
  virtual Interval support() const noexcept = 0;
  virtual Interval theta_domain() const noexcept = 0;

  virtual double log_pdf(double x, double theta) const noexcept = 0;
  virtual double score(double x, double theta) const noexcept = 0;
  virtual double score_prime(double x, double theta) const noexcept = 0;

  /// All x in the support with ln h(x | θ) == log_p; empty when log_p lies
  /// outside the range of the density.
  virtual std::vector<double> inverse_log(double log_p, double theta) const = 0;

  /// All x with h(x | θ) == p. Empty for p <= 0.
  std::vector<double> inverse(double p, double theta) const;

  /// A positive θ interval expected to contain every critical point of the
  /// centralities for this sample, used when the caller supplies none.
  virtual Interval default_theta_bracket(const WeightedSample& sample) const = 0;
};

/// h(x | θ) = θ exp(-θ x), x >= 0, θ > 0 (θ is the rate).
class ExponentialModel final : public PdfModel {
 public:
  std::string_view name() const noexcept override { return "exponential"; }
  Interval support() const noexcept override;
  Interval theta_domain() const noexcept override;
  double log_pdf(double x, double theta) const noexcept override;
  double score(double x, double theta) const noexcept override;
  double score_prime(double x, double theta) const noexcept override;
  std::vector<double> inverse_log(double log_p, double theta) const override;
  Interval default_theta_bracket(const WeightedSample& sample) const override;
};

/// Half-normal with precision θ: h(x | θ) = sqrt(2θ/π) exp(-θ x² / 2), x >= 0.
class HalfNormalModel final : public PdfModel {
 public:
  std::string_view name() const noexcept override { return "halfnormal"; }
  Interval support() const noexcept override;
  Interval theta_domain() const noexcept override;
  double log_pdf(double x, double theta) const noexcept override;
  double score(double x, double theta) const noexcept override;
  double score_prime(double x, double theta) const noexcept override;
  std::vector<double> inverse_log(double log_p, double theta) const override;
  Interval default_theta_bracket(const WeightedSample& sample) const override;
};

/// Free-function form of the exponential inverse: [-ln(p/θ)/θ] for 0 < p <= θ.
std::vector<double> exponential_inverse(double p, double theta);

/// "exponential" or "halfnormal"; throws InvalidArgument otherwise.
std::unique_ptr<PdfModel> make_model(std::string_view id);

std::vector<std::string> model_ids();

}  // namespace cestim
