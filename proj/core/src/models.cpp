#include "cestim/models.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "cestim/error.hpp"

namespace cestim {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Relative slack for a density value that exceeds the mode only by rounding.
constexpr double kModeSlack = 1e-12;

// Smallest and largest positive points with positive weight.
std::pair<double, double> positive_extent(const WeightedSample& sample) {
  double lo = kInf, hi = 0.0;
  for (std::size_t i = 0; i < sample.size(); ++i) {
    const double x = std::abs(sample.points()[i]);
    if (!(sample.weights()[i] > 0.0) || x == 0.0) continue;
    lo = std::min(lo, x);
    hi = std::max(hi, x);
  }
  if (hi == 0.0) fail(ErrorCode::DegenerateSample, "sample has no positive point");
  return {lo, hi};
}

}  // namespace

std::vector<double> PdfModel::inverse(double p, double theta) const {
  if (!(p > 0.0)) return {};
  return inverse_log(std::log(p), theta);
}

Interval ExponentialModel::support() const noexcept { return {0.0, kInf}; }
Interval ExponentialModel::theta_domain() const noexcept { return {0.0, kInf}; }

double ExponentialModel::log_pdf(double x, double theta) const noexcept {
  if (!(x >= 0.0) || !(theta > 0.0)) return -kInf;
  return std::log(theta) - theta * x;
}

double ExponentialModel::score(double x, double theta) const noexcept { return 1.0 / theta - x; }

double ExponentialModel::score_prime(double, double theta) const noexcept {
  return -1.0 / (theta * theta);
}

std::vector<double> ExponentialModel::inverse_log(double log_p, double theta) const {
  if (!(theta > 0.0)) fail(ErrorCode::InvalidArgument, "theta must be positive");
  const double log_mode = std::log(theta);
  if (!std::isfinite(log_p)) return {};
  if (log_p > log_mode) {
    if (log_p - log_mode > kModeSlack * std::max(1.0, std::abs(log_mode))) return {};
    return {0.0};
  }
  return {(log_mode - log_p) / theta};
}

Interval ExponentialModel::default_theta_bracket(const WeightedSample& sample) const {
  // Critical points satisfy θ = 1 / (a signed reweighting of the x_i); the
  // bracket spans three decades beyond the extreme reciprocals.
  const auto [lo, hi] = positive_extent(sample);
  return {1e-3 / hi, 1e3 / lo};
}

std::vector<double> exponential_inverse(double p, double theta) {
  return ExponentialModel{}.inverse(p, theta);
}

Interval HalfNormalModel::support() const noexcept { return {0.0, kInf}; }
Interval HalfNormalModel::theta_domain() const noexcept { return {0.0, kInf}; }

double HalfNormalModel::log_pdf(double x, double theta) const noexcept {
  if (!(x >= 0.0) || !(theta > 0.0)) return -kInf;
  return 0.5 * std::log(2.0 * theta / std::numbers::pi) - 0.5 * theta * x * x;
}

double HalfNormalModel::score(double x, double theta) const noexcept {
  return 0.5 / theta - 0.5 * x * x;
}

double HalfNormalModel::score_prime(double, double theta) const noexcept {
  return -0.5 / (theta * theta);
}

std::vector<double> HalfNormalModel::inverse_log(double log_p, double theta) const {
  if (!(theta > 0.0)) fail(ErrorCode::InvalidArgument, "theta must be positive");
  const double log_mode = 0.5 * std::log(2.0 * theta / std::numbers::pi);
  if (!std::isfinite(log_p)) return {};
  if (log_p > log_mode) {
    if (log_p - log_mode > kModeSlack * std::max(1.0, std::abs(log_mode))) return {};
    return {0.0};
  }
  return {std::sqrt(2.0 * (log_mode - log_p) / theta)};
}

Interval HalfNormalModel::default_theta_bracket(const WeightedSample& sample) const {
  const auto [lo, hi] = positive_extent(sample);
  return {1e-3 / (hi * hi), 1e3 / (lo * lo)};
}

std::unique_ptr<PdfModel> make_model(std::string_view id) {
  if (id == "exponential") return std::make_unique<ExponentialModel>();
  if (id == "halfnormal") return std::make_unique<HalfNormalModel>();
  fail(ErrorCode::InvalidArgument, "unknown model '" + std::string(id) + "'");
}

std::vector<std::string> model_ids() { return {"exponential", "halfnormal"}; }

}  // namespace cestim
