#include "cestim/residual_distributions.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <limits>
#include <numbers>

#include "cestim/error.hpp"

namespace cestim {

namespace {

using boost::math::quadrature::gauss_kronrod;

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr unsigned kMaxDepth = 20;
constexpr double kQuadTol = 1e-12;

template <class F>
double integrate(F&& f, double a, double b) {
  return gauss_kronrod<double, 61>::integrate(f, a, b, kMaxDepth, kQuadTol);
}

// ln(1 + e^t) without overflow.
double log1p_exp(double t) { return t > 0.0 ? t + std::log1p(std::exp(-t)) : std::log1p(std::exp(t)); }

// E[T^k] for T = |N(0, 1)|.
double unit_half_normal_moment(double k) {
  const double c = std::sqrt(2.0 / std::numbers::pi);
  auto f = [&](double t) { return t == 0.0 ? (k == 0.0 ? c : 0.0) : c * std::pow(t, k) * std::exp(-0.5 * t * t); };
  return integrate(f, 0.0, 16.0) + integrate(f, 16.0, kInf);
}

}  // namespace

PowerMoments half_normal_power_moments(double sigma, double beta) {
  if (!(sigma > 0.0) || !(beta > 0.0)) {
    fail(ErrorCode::InvalidArgument, "sigma and beta must be positive");
  }
  const double m1 = std::pow(sigma, beta) * unit_half_normal_moment(beta);
  const double m2 = std::pow(sigma, 2.0 * beta) * unit_half_normal_moment(2.0 * beta);
  return {m1, m2 - m1 * m1};
}

HolderResidualDensity::HolderResidualDensity(double beta, std::size_t n, double mean_y,
                                             double var_y)
    : beta_(beta) {
  if (!(beta > 0.0)) fail(ErrorCode::InvalidArgument, "beta must be positive");
  if (n == 0) fail(ErrorCode::InvalidArgument, "n must be at least 1");
  if (!(var_y > 0.0) || !std::isfinite(mean_y)) {
    fail(ErrorCode::InvalidArgument, "var_y must be positive and mean_y finite");
  }
  mean_ = static_cast<double>(n) * mean_y;
  stddev_ = std::sqrt(static_cast<double>(n) * var_y);
  // Mass of N(mean, stddev²) on [0, ∞).
  const double mass = 0.5 * std::erfc(-mean_ / (stddev_ * std::numbers::sqrt2));
  if (!(mass > 0.0)) fail(ErrorCode::InvalidArgument, "truncated normal has no mass on z >= 0");
  normalizer_ = 1.0 / mass;
}

HolderResidualDensity HolderResidualDensity::from_error_sigma(double beta, std::size_t n,
                                                              double sigma) {
  const PowerMoments m = half_normal_power_moments(sigma, beta);
  return HolderResidualDensity(beta, n, m.mean, m.variance);
}

double HolderResidualDensity::operator()(double z) const {
  if (z < 0.0) return 0.0;
  if (z == 0.0 && beta_ > 1.0) return 0.0;
  const double u = std::pow(z, beta_);
  const double d = (u - mean_) / stddev_;
  const double phi = std::exp(-0.5 * d * d) / (stddev_ * std::sqrt(2.0 * std::numbers::pi));
  const double jac = beta_ == 1.0 ? 1.0 : beta_ * std::pow(z, beta_ - 1.0);
  return normalizer_ * jac * phi;
}

LehmerResidualDensity::LehmerResidualDensity(double mu_b, double mu_b1, double sigma_b,
                                             double sigma_b1) {
  if (mu_b1 == 0.0 || !std::isfinite(mu_b1) || !std::isfinite(mu_b)) {
    fail(ErrorCode::InvalidArgument, "mu_b1 must be finite and non-zero");
  }
  if (!(sigma_b > 0.0) || !(sigma_b1 > 0.0)) {
    fail(ErrorCode::InvalidArgument, "sigmas must be positive");
  }
  rho_ = sigma_b1 / sigma_b;
  mu_ = mu_b / mu_b1;
  delta_ = sigma_b1 / mu_b1;
  sigma_ratio_num_ = sigma_b / std::abs(mu_b1);

  const double c = mu_;
  const double w = spread();
  const double lo = std::max(0.0, c - 12.0 * w);
  const double hi = std::max(c + 12.0 * w, lo + w);
  auto f = [this](double z) { return ratio_density(z); };
  double mass = integrate(f, lo, hi) + integrate(f, hi, kInf);
  if (lo > 0.0) mass += integrate(f, 0.0, lo);
  if (!(mass > 0.0) || !std::isfinite(mass)) {
    fail(ErrorCode::InvalidArgument, "ratio density has no mass on z >= 0");
  }
  normalizer_ = 1.0 / mass;
}

double LehmerResidualDensity::spread() const noexcept {
  return std::sqrt(sigma_ratio_num_ * sigma_ratio_num_ + mu_ * mu_ * delta_ * delta_);
}

double LehmerResidualDensity::log_ratio_density(double z) const {
  const double rz2 = rho_ * rho_ * z * z;
  const double log_cauchy = std::log(rho_ / (std::numbers::pi * (1.0 + rz2)));
  const double exponent = -(rho_ * rho_ * mu_ * mu_ + 1.0) / (2.0 * delta_ * delta_);
  const double q = (1.0 + mu_ * rho_ * rho_ * z) / (delta_ * std::sqrt(1.0 + rz2));
  // q erf(q / √2) >= 0; the bracket is 1 + exp(t).
  const double qe = q * std::erf(q / std::numbers::sqrt2);
  const double t = qe > 0.0 ? std::log(std::sqrt(std::numbers::pi / 2.0) * qe) + 0.5 * q * q
                            : -kInf;
  return log_cauchy + exponent + log1p_exp(t);
}

double LehmerResidualDensity::ratio_density(double z) const { return std::exp(log_ratio_density(z)); }

double LehmerResidualDensity::operator()(double z) const {
  if (z < 0.0) return 0.0;
  return normalizer_ * ratio_density(z);
}

double residual_pdf_holder(double z, double beta, std::size_t n, double mean_y, double var_y) {
  return HolderResidualDensity(beta, n, mean_y, var_y)(z);
}

double residual_pdf_lehmer(double z, double mu_b, double mu_b1, double sigma_b, double sigma_b1) {
  return LehmerResidualDensity(mu_b, mu_b1, sigma_b, sigma_b1)(z);
}

}  // namespace cestim
