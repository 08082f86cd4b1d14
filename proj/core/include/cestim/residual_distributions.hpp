#pragma once

#include <cstddef>

namespace cestim {

/// Mean and variance of Y = |η|^β for η ~ N(0, σ²), computed by quadrature
/// of the half-normal density of |η|.
struct PowerMoments {
  double mean;
  double variance;
};
PowerMoments half_normal_power_moments(double sigma, double beta);

/// Density of the Hölder residual statistic ψ = Z^(1/β), where Z is the sum
/// of n iid copies of Y approximated by a normal (n E[Y], n Var[Y]) truncated
/// to Z >= 0:
///
///   f_H(z) = C β z^(β-1) φ(z^β; n E[Y], n Var[Y]),   z >= 0,
///
/// with C the reciprocal of the truncated normal mass, so f_H integrates to 1.
class HolderResidualDensity {
 public:
  /// Requires beta > 0, n >= 1, var_y > 0.
  HolderResidualDensity(double beta, std::size_t n, double mean_y, double var_y);
  /// Builds E[Y] and Var[Y] from the error scale σ of the raw residuals.
  static HolderResidualDensity from_error_sigma(double beta, std::size_t n, double sigma);

  double operator()(double z) const;
  double normalizer() const noexcept { return normalizer_; }
  double mean() const noexcept { return mean_; }      // n E[Y]
  double stddev() const noexcept { return stddev_; }  // sqrt(n Var[Y])
  double beta() const noexcept { return beta_; }

 private:
  double beta_;
  double mean_;
  double stddev_;
  double normalizer_;
};

/// Density of the Lehmer residual statistic, a ratio of two normals
/// N(mu_b, sigma_b²) / N(mu_b1, sigma_b1²) assumed independent, truncated to
/// z >= 0. Closed form of the normal ratio with
///
///   ρ = sigma_b1 / sigma_b,  μ = mu_b / mu_b1,  δ = sigma_b1 / mu_b1,
///   q = (1 + μ ρ² z) / (δ sqrt(1 + ρ² z²)),
///
/// and a normalizing constant obtained by quadrature over [0, ∞).
class LehmerResidualDensity {
 public:
  /// Requires mu_b1 != 0, sigma_b > 0, sigma_b1 > 0.
  LehmerResidualDensity(double mu_b, double mu_b1, double sigma_b, double sigma_b1);

  double operator()(double z) const;
  /// Untruncated ratio density at z (any real z).
  double ratio_density(double z) const;
  double normalizer() const noexcept { return normalizer_; }
  /// Location and rough spread of the ratio, used to place quadrature breaks
  /// and plotting ranges.
  double center() const noexcept { return mu_; }
  double spread() const noexcept;

 private:
  double log_ratio_density(double z) const;

  double rho_;
  double mu_;
  double delta_;
  double sigma_ratio_num_;  // sigma_b / |mu_b1|
  double normalizer_ = 1.0;
};

/// Convenience forms of the two densities.
double residual_pdf_holder(double z, double beta, std::size_t n, double mean_y, double var_y);
double residual_pdf_lehmer(double z, double mu_b, double mu_b1, double sigma_b, double sigma_b1);

}  // namespace cestim
