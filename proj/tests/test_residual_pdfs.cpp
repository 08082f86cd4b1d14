#include <gtest/gtest.h>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <vector>

#include "cestim/error.hpp"
#include "cestim/residual_distributions.hpp"

namespace cestim {
namespace {

using boost::math::quadrature::gauss_kronrod;
constexpr double kInf = std::numeric_limits<double>::infinity();

template <class F>
double integrate(F&& f, double a, double b) {
  return gauss_kronrod<double, 61>::integrate(f, a, b, 15, 1e-10);
}

template <class F>
double total_mass(F&& f, double center) {
  return integrate(f, 0.0, center) + integrate(f, center, kInf);
}

// Sup-norm distance between the bin averages of a density and a histogram of
// ratio draws X / Y with X ~ N(mu_x, sx²), Y ~ N(mu_y, sy²), kept when X/Y >= 0.
template <class F>
double monte_carlo_sup_error(F&& density, double mu_x, double sx, double mu_y, double sy,
                             double hi, std::uint64_t seed) {
  constexpr int kBins = 50;
  constexpr int kDraws = 1000000;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> nx(mu_x, sx), ny(mu_y, sy);
  std::vector<double> counts(kBins, 0.0);
  int kept = 0;
  const double width = hi / kBins;
  for (int i = 0; i < kDraws; ++i) {
    const double r = nx(rng) / ny(rng);
    if (r < 0.0) continue;
    ++kept;
    const auto bin = static_cast<std::size_t>(r / width);
    if (bin < kBins) counts[bin] += 1.0;
  }
  double sup = 0.0;
  for (int b = 0; b < kBins; ++b) {
    const double empirical = counts[b] / (kept * width);
    const double model = integrate(density, b * width, (b + 1) * width) / width;
    sup = std::max(sup, std::abs(empirical - model));
  }
  return sup;
}

TEST(HalfNormalMoments, MatchGammaClosedForm) {
  auto oracle = [](double sigma, double k) {
    return std::pow(sigma, k) * std::pow(2.0, k / 2) * std::tgamma((k + 1) / 2) /
           std::sqrt(std::numbers::pi);
  };
  for (double sigma : {0.01, 0.3, 1.0, 4.0}) {
    for (double beta : {0.5, 1.0, 2.0, 3.5}) {
      const auto m = half_normal_power_moments(sigma, beta);
      const double m1 = oracle(sigma, beta), m2 = oracle(sigma, 2 * beta);
      EXPECT_NEAR(m.mean / m1, 1.0, 1e-10);
      EXPECT_NEAR(m.variance / (m2 - m1 * m1), 1.0, 1e-9);
    }
  }
  EXPECT_THROW(half_normal_power_moments(0.0, 2.0), Error);
}

TEST(HolderResidualDensity, IntegratesToOne) {
  for (double beta : {0.5, 1.0, 2.0, 3.0}) {
    for (std::size_t n : {1u, 10u, 200u}) {
      const auto f = HolderResidualDensity::from_error_sigma(beta, n, 0.2);
      const double center = std::pow(f.mean(), 1.0 / beta);
      EXPECT_NEAR(total_mass(f, center), 1.0, 1e-3) << "beta " << beta << " n " << n;
    }
  }
}

TEST(HolderResidualDensity, BetaOneIsTruncatedNormal) {
  const HolderResidualDensity f(1.0, 4, 0.5, 0.25);  // N(2, 1) truncated to z >= 0
  const double mass = 0.5 * std::erfc(-2.0 / std::numbers::sqrt2);
  for (double z : {0.0, 0.5, 2.0, 3.7}) {
    const double phi = std::exp(-0.5 * (z - 2) * (z - 2)) / std::sqrt(2 * std::numbers::pi);
    EXPECT_NEAR(f(z), phi / mass, 1e-14);
  }
  EXPECT_EQ(f(-0.1), 0.0);
}

TEST(HolderResidualDensity, VanishesAtZeroForBetaAboveOne) {
  EXPECT_EQ(residual_pdf_holder(0.0, 2.0, 5, 0.1, 0.01), 0.0);
  EXPECT_EQ(residual_pdf_holder(0.0, 1.5, 5, 0.1, 0.01), 0.0);
  EXPECT_THROW(HolderResidualDensity(2.0, 5, 0.1, 0.0), Error);
}

TEST(LehmerResidualDensity, IntegratesToOne) {
  for (auto [mb, mb1, sb, sb1] : {std::array{2.0, 4.0, 0.2, 0.2}, std::array{1.0, 1.0, 0.5, 0.3},
                                  std::array{0.3, 2.0, 0.1, 0.8}}) {
    const LehmerResidualDensity f(mb, mb1, sb, sb1);
    EXPECT_NEAR(total_mass(f, f.center() + f.spread()), 1.0, 1e-3);
  }
}

TEST(LehmerResidualDensity, MatchesMonteCarloWellSeparated) {
  const LehmerResidualDensity f(2.0, 4.0, 0.2, 0.2);
  EXPECT_LT(monte_carlo_sup_error(f, 2.0, 0.2, 4.0, 0.2, 1.0, 31), 0.05);
}

TEST(LehmerResidualDensity, MatchesMonteCarloUnequalSigmas) {
  const LehmerResidualDensity f(2.0, 4.0, 0.6, 0.2);
  EXPECT_LT(monte_carlo_sup_error(f, 2.0, 0.6, 4.0, 0.2, 1.5, 32), 0.05);
}

TEST(LehmerResidualDensity, Scaling) {
  const LehmerResidualDensity base(2.0, 4.0, 0.3, 0.2);
  // Scaling numerator and denominator alike leaves the ratio unchanged.
  const LehmerResidualDensity both(6.0, 12.0, 0.9, 0.6);
  // Scaling the numerator by c stretches z by c.
  const double c = 2.5;
  const LehmerResidualDensity num(2.0 * c, 4.0, 0.3 * c, 0.2);
  for (double z : {0.2, 0.45, 0.5, 0.6, 0.9}) {
    EXPECT_NEAR(both(z), base(z), 1e-10 * std::max(1.0, base(z)));
    EXPECT_NEAR(num(c * z), base(z) / c, 1e-9 * std::max(1.0, base(z)));
  }
}

TEST(LehmerResidualDensity, RejectsInvalidParameters) {
  EXPECT_THROW(LehmerResidualDensity(1.0, 0.0, 0.1, 0.1), Error);
  EXPECT_THROW(LehmerResidualDensity(1.0, 1.0, 0.0, 0.1), Error);
  EXPECT_EQ(residual_pdf_lehmer(-0.5, 2.0, 4.0, 0.2, 0.2), 0.0);
}

}  // namespace
}  // namespace cestim
