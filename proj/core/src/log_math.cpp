#include "cestim/log_math.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>

namespace cestim {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

double log_sum_exp(std::span<const double> values) noexcept {
  double max_value = -kInf;
  for (double v : values) max_value = std::max(max_value, v);
  if (max_value == -kInf || max_value == kInf) return max_value;

  double sum = 0.0;
  for (double v : values) sum += std::exp(v - max_value);
  return max_value + std::log(sum);
}

double log_power_sum(std::span<const double> log_v, std::span<const double> weights,
                     double p) noexcept {
  assert(log_v.size() == weights.size());
  // Two passes: find the shift, then accumulate. Avoids materializing the
  // exponent vector for every call on the hot path of the solvers.
  double shift = -kInf;
  for (std::size_t i = 0; i < log_v.size(); ++i) {
    if (!(weights[i] > 0.0)) continue;
    const double t = std::log(weights[i]) + (p == 0.0 ? 0.0 : p * log_v[i]);
    shift = std::max(shift, t);
  }
  if (shift == -kInf || shift == kInf) return shift;

  double sum = 0.0;
  for (std::size_t i = 0; i < log_v.size(); ++i) {
    if (!(weights[i] > 0.0)) continue;
    const double t = std::log(weights[i]) + (p == 0.0 ? 0.0 : p * log_v[i]);
    sum += std::exp(t - shift);
  }
  return shift + std::log(sum);
}

LogRange log_range(std::span<const double> log_v, std::span<const double> weights) noexcept {
  LogRange r{kInf, -kInf};
  for (std::size_t i = 0; i < log_v.size(); ++i) {
    if (!(weights[i] > 0.0)) continue;
    r.min = std::min(r.min, log_v[i]);
    r.max = std::max(r.max, log_v[i]);
  }
  return r;
}

double log_holder_mean(std::span<const double> log_v, std::span<const double> weights,
                       double p, double cap, double zero_guard) noexcept {
  if (std::abs(p) > cap) {
    const LogRange r = log_range(log_v, weights);
    return p > 0.0 ? r.max : r.min;
  }
  if (std::abs(p) < zero_guard) {
    // Weighted geometric mean: Σ w_i ln v_i.
    double acc = 0.0;
    for (std::size_t i = 0; i < log_v.size(); ++i) {
      if (!(weights[i] > 0.0)) continue;
      if (log_v[i] == -kInf) return -kInf;
      acc += weights[i] * log_v[i];
    }
    return acc;
  }
  return log_power_sum(log_v, weights, p) / p;
}

double log_lehmer_mean(std::span<const double> log_v, std::span<const double> weights,
                       double p, double cap) noexcept {
  if (std::abs(p) > cap) {
    const LogRange r = log_range(log_v, weights);
    return p > 0.0 ? r.max : r.min;
  }
  const LogRange r = log_range(log_v, weights);
  if (r.max == -kInf) return -kInf;
  // A zero value with p < 1 makes the denominator dominate; the mean tends to 0.
  if (r.min == -kInf && p < 1.0) return -kInf;
  return log_power_sum(log_v, weights, p) - log_power_sum(log_v, weights, p - 1.0);
}

}  // namespace cestim
