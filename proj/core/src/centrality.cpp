#include "cestim/centrality.hpp"

#include <cctype>
#include <cmath>
#include <limits>
#include <string>

#include "cestim/error.hpp"
#include "cestim/log_math.hpp"
#include "cestim/parallel.hpp"

namespace cestim {

namespace {

void validate(const CentralityQuery& q) {
  if (!std::isfinite(q.alpha)) fail(ErrorCode::InvalidArgument, "alpha must be finite");
  if (!(q.epsilon > 0.0) || !std::isfinite(q.epsilon)) {
    fail(ErrorCode::InvalidArgument, "epsilon must be positive and finite");
  }
  if (!(q.alpha_cap > 0.0)) fail(ErrorCode::InvalidArgument, "alpha cap must be positive");
}

}  // namespace

std::string_view to_string(CentralityKind kind) noexcept {
  return kind == CentralityKind::Holder ? "holder" : "lehmer";
}

CentralityKind parse_centrality_kind(std::string_view text) {
  std::string lower(text);
  for (char& c : lower) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (lower == "holder" || lower == "hölder") return CentralityKind::Holder;
  if (lower == "lehmer") return CentralityKind::Lehmer;
  fail(ErrorCode::InvalidArgument, "unknown centrality kind '" + std::string(text) + "'");
}

std::vector<double> log_densities(const WeightedSample& sample, const PdfModel& model,
                                  double theta) {
  std::vector<double> out(sample.size());
  for (std::size_t i = 0; i < sample.size(); ++i) {
    out[i] = model.log_pdf(sample.points()[i], theta);
    if (sample.weights()[i] > 0.0 && !std::isfinite(out[i])) {
      fail(ErrorCode::PointOutsideSupport,
           "point " + format_double(sample.points()[i]) + " has zero density under " +
               std::string(model.name()) + " at theta " + format_double(theta));
    }
  }
  return out;
}

double log_power_sum(const WeightedSample& sample, const PdfModel& model, double theta, double a) {
  if (a == 0.0) return 0.0;
  const std::vector<double> ld = log_densities(sample, model, theta);
  return log_power_sum(ld, sample.weights(), a);
}

LogCentralityValue log_holder(const WeightedSample& sample, const PdfModel& model, double theta,
                              const CentralityQuery& query) {
  validate(query);
  const std::vector<double> ld = log_densities(sample, model, theta);
  const double mean =
      log_holder_mean(ld, sample.weights(), query.alpha, query.alpha_cap, kAlphaZeroGuard);
  return {std::log(query.epsilon) + mean, CentralityKind::Holder, query.alpha, theta,
          std::abs(query.alpha) > query.alpha_cap};
}

LogCentralityValue log_lehmer(const WeightedSample& sample, const PdfModel& model, double theta,
                              const CentralityQuery& query) {
  validate(query);
  const std::vector<double> ld = log_densities(sample, model, theta);
  const double mean = log_lehmer_mean(ld, sample.weights(), query.alpha, query.alpha_cap);
  return {std::log(query.epsilon) + mean, CentralityKind::Lehmer, query.alpha, theta,
          std::abs(query.alpha) > query.alpha_cap};
}

LogCentralityValue log_centrality(const WeightedSample& sample, const PdfModel& model, double theta,
                                  const CentralityQuery& query) {
  return query.kind == CentralityKind::Holder ? log_holder(sample, model, theta, query)
                                              : log_lehmer(sample, model, theta, query);
}

std::vector<double> g_weights(const WeightedSample& sample, const PdfModel& model, double theta,
                              double a) {
  const auto weights = sample.weights();
  if (a == 0.0) return {weights.begin(), weights.end()};

  const std::vector<double> ld = log_densities(sample, model, theta);
  const double norm = log_power_sum(ld, weights, a);
  std::vector<double> g(sample.size(), 0.0);
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (!(weights[i] > 0.0)) continue;
    g[i] = std::exp(std::log(weights[i]) + a * ld[i] - norm);
  }
  return g;
}

std::vector<double> central_observation(const WeightedSample& sample, const PdfModel& model,
                                        double theta, const CentralityQuery& query) {
  const LogCentralityValue c = log_centrality(sample, model, theta, query);
  return model.inverse_log(c.log_value - std::log(query.epsilon), theta);
}

std::vector<SurfacePoint> centrality_surface(const WeightedSample& sample, const PdfModel& model,
                                             CentralityKind kind, std::span<const double> alphas,
                                             std::span<const double> thetas, double epsilon,
                                             double alpha_cap) {
  std::vector<SurfacePoint> out(alphas.size() * thetas.size());
  parallel_for(alphas.size(), [&](std::size_t a) {
    const CentralityQuery q{kind, alphas[a], epsilon, alpha_cap};
    for (std::size_t t = 0; t < thetas.size(); ++t) {
      out[a * thetas.size() + t] = {alphas[a], thetas[t],
                                    log_centrality(sample, model, thetas[t], q).log_value};
    }
  });
  return out;
}

}  // namespace cestim
