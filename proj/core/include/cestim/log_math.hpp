#pragma once

#include <cstddef>
#include <span>

namespace cestim {

/// ln Σ exp(v_i), max-shifted. Entries equal to -inf contribute nothing;
/// returns -inf for an empty span or when every entry is -inf, +inf when any
/// entry is +inf.
double log_sum_exp(std::span<const double> values) noexcept;

/// ln Σ_i w_i exp(p · log_v_i) over entries with w_i > 0.
///
/// This is the log of the power sum that underlies both the Hölder and the
/// Lehmer means. `log_v` may contain -inf (a zero value): such an entry adds
/// nothing for p > 0 and drives the result to +inf for p < 0. For p == 0 the
/// result is ln Σ w_i, exactly 0 for normalized weights.
double log_power_sum(std::span<const double> log_v, std::span<const double> weights,
                     double p) noexcept;

/// Log of the weighted Hölder (power) mean of order p of exp(log_v).
/// |p| < zero_guard uses the weighted geometric mean; |p| > cap returns the
/// exact min (p < 0) or max (p > 0) over positive-weight entries. Weights are
/// assumed normalized.
double log_holder_mean(std::span<const double> log_v, std::span<const double> weights,
                       double p, double cap, double zero_guard = 1e-12) noexcept;

/// Log of the weighted Lehmer mean Σ w v^p / Σ w v^(p-1). Beyond |p| > cap the
/// same min/max limits as the Hölder mean apply.
double log_lehmer_mean(std::span<const double> log_v, std::span<const double> weights,
                       double p, double cap) noexcept;

/// Min and max of log_v over entries with positive weight.
struct LogRange {
  double min;
  double max;
};
LogRange log_range(std::span<const double> log_v, std::span<const double> weights) noexcept;

}  // namespace cestim
