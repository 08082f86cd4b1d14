#include "cestim/data.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <random>
#include <string_view>

#include "cestim/error.hpp"

namespace cestim {

namespace {

constexpr double kWeightSumTolerance = 1e-12;

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

double parse_double(std::string_view field, std::size_t line_no) {
  field = trim(field);
  double value = 0.0;
  const char* begin = field.data();
  const char* end = field.data() + field.size();
  if (!field.empty() && *begin == '+') ++begin;
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (field.empty() || ec != std::errc() || ptr != end) {
    fail(ErrorCode::ParseError,
         "line " + std::to_string(line_no) + ": not a number: '" + std::string(field) + "'");
  }
  return value;
}

// Uniform double in [0, 1) from the top 53 bits.
double unit_uniform(std::mt19937_64& engine) {
  return static_cast<double>(engine() >> 11) * 0x1.0p-53;
}

double draw_exponential(std::mt19937_64& engine, double rate) {
  return -std::log1p(-unit_uniform(engine)) / rate;
}

}  // namespace

Histogram::Histogram(std::vector<double> bin_edges, std::vector<double> counts)
    : edges_(std::move(bin_edges)), counts_(std::move(counts)) {
  if (counts_.empty() || edges_.size() != counts_.size() + 1) {
    fail(ErrorCode::InvalidHistogram, "histogram needs n >= 1 counts and n + 1 edges");
  }
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    if (!std::isfinite(edges_[i])) fail(ErrorCode::InvalidHistogram, "non-finite bin edge");
    if (i > 0 && !(edges_[i] > edges_[i - 1])) {
      fail(ErrorCode::InvalidHistogram, "bin edges must be strictly increasing");
    }
  }
  for (double c : counts_) {
    if (!std::isfinite(c) || c < 0.0) {
      fail(ErrorCode::InvalidHistogram, "counts must be finite and non-negative");
    }
    total_ += c;
  }
  if (!(total_ > 0.0)) fail(ErrorCode::EmptyHistogram, "histogram has zero total count");
}

WeightedSample::WeightedSample(std::vector<double> points, std::vector<double> weights,
                               std::optional<std::vector<double>> densities)
    : points_(std::move(points)), weights_(std::move(weights)), densities_(std::move(densities)) {
  if (points_.empty()) fail(ErrorCode::InvalidArgument, "sample is empty");
  if (points_.size() != weights_.size()) {
    fail(ErrorCode::InvalidArgument, "points and weights differ in length");
  }
  if (densities_ && densities_->size() != points_.size()) {
    fail(ErrorCode::InvalidArgument, "densities do not align with points");
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < points_.size(); ++i) {
    if (!std::isfinite(points_[i])) fail(ErrorCode::InvalidArgument, "non-finite sample point");
    if (!std::isfinite(weights_[i]) || weights_[i] < 0.0) {
      fail(ErrorCode::InvalidArgument, "weights must be finite and non-negative");
    }
    sum += weights_[i];
  }
  if (std::abs(sum - 1.0) > kWeightSumTolerance) {
    fail(ErrorCode::InvalidArgument, "weights must sum to 1");
  }
  if (densities_) {
    for (double d : *densities_) {
      if (!std::isfinite(d) || d < 0.0) {
        fail(ErrorCode::InvalidArgument, "densities must be finite and non-negative");
      }
    }
  }
}

WeightedSample WeightedSample::from_unnormalized(std::vector<double> points,
                                                 std::vector<double> weights,
                                                 std::optional<std::vector<double>> densities) {
  double total = 0.0;
  for (double w : weights) {
    if (!std::isfinite(w) || w < 0.0) {
      fail(ErrorCode::InvalidArgument, "weights must be finite and non-negative");
    }
    total += w;
  }
  if (!(total > 0.0)) fail(ErrorCode::InvalidArgument, "weights have zero total");
  for (double& w : weights) w /= total;
  return WeightedSample(std::move(points), std::move(weights), std::move(densities));
}

WeightedSample WeightedSample::uniform(std::vector<double> points) {
  std::vector<double> weights(points.size(), points.empty() ? 0.0 : 1.0 / points.size());
  return WeightedSample(std::move(points), std::move(weights));
}

double WeightedSample::weighted_mean() const noexcept {
  double acc = 0.0;
  for (std::size_t i = 0; i < points_.size(); ++i) acc += weights_[i] * points_[i];
  return acc;
}

WeightedSample histogram_to_sample(const Histogram& h) {
  std::vector<double> points, weights, densities;
  const double total = h.total();
  for (std::size_t i = 0; i < h.bin_count(); ++i) {
    const double c = h.counts()[i];
    if (c == 0.0) continue;
    points.push_back(h.bin_midpoint(i));
    weights.push_back(c / total);
    densities.push_back(c / (total * h.bin_width(i)));
  }
  return WeightedSample(std::move(points), std::move(weights), std::move(densities));
}

std::vector<double> synth_exponential_draws(const SynthOptions& opts) {
  if (!(opts.theta > 0.0) || !std::isfinite(opts.theta)) {
    fail(ErrorCode::InvalidArgument, "theta must be positive");
  }
  if (opts.n < 1) fail(ErrorCode::InvalidArgument, "n must be at least 1");
  if (!(opts.contamination >= 0.0 && opts.contamination < 1.0)) {
    fail(ErrorCode::InvalidArgument, "contamination must lie in [0, 1)");
  }
  if (!(opts.outlier_scale > 0.0) || !std::isfinite(opts.outlier_scale)) {
    fail(ErrorCode::InvalidArgument, "outlier scale must be positive");
  }

  const auto n_out =
      static_cast<std::size_t>(std::floor(opts.contamination * static_cast<double>(opts.n)));
  const std::size_t n_clean = opts.n - n_out;
  const double outlier_rate = opts.theta / opts.outlier_scale;

  std::mt19937_64 engine(opts.seed);
  std::vector<double> draws;
  draws.reserve(opts.n);
  for (std::size_t i = 0; i < n_clean; ++i) draws.push_back(draw_exponential(engine, opts.theta));
  for (std::size_t i = 0; i < n_out; ++i) draws.push_back(draw_exponential(engine, outlier_rate));
  return draws;
}

Histogram bin_nonnegative(std::span<const double> values, std::size_t bins) {
  if (bins < 1) fail(ErrorCode::InvalidArgument, "need at least one bin");
  if (values.empty()) fail(ErrorCode::EmptyHistogram, "no values to bin");
  double max_value = 0.0;
  for (double v : values) {
    if (!std::isfinite(v) || v < 0.0) {
      fail(ErrorCode::InvalidArgument, "values to bin must be finite and non-negative");
    }
    max_value = std::max(max_value, v);
  }
  const double upper = max_value > 0.0 ? max_value : 1.0;

  std::vector<double> edges(bins + 1);
  for (std::size_t i = 0; i <= bins; ++i) {
    edges[i] = upper * static_cast<double>(i) / static_cast<double>(bins);
  }
  std::vector<double> counts(bins, 0.0);
  for (double v : values) {
    auto idx = static_cast<std::size_t>(v / upper * static_cast<double>(bins));
    counts[std::min(idx, bins - 1)] += 1.0;
  }
  return Histogram(std::move(edges), std::move(counts));
}

Histogram synth_exponential(const SynthOptions& opts) {
  const std::vector<double> draws = synth_exponential_draws(opts);
  return bin_nonnegative(draws, opts.bins);
}

Histogram read_histogram_csv(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  bool saw_header = false;
  std::vector<double> edges, counts;

  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view = trim(line);
    if (line_no == 1 && view.starts_with("\xEF\xBB\xBF")) view = trim(view.substr(3));
    if (view.empty()) continue;
    if (!saw_header) {
      if (view != "bin_left,bin_right,count") {
        fail(ErrorCode::ParseError, "expected header 'bin_left,bin_right,count'");
      }
      saw_header = true;
      continue;
    }
    std::array<std::string_view, 3> fields;
    std::size_t field = 0;
    std::size_t start = 0;
    for (std::size_t pos = 0; pos <= view.size(); ++pos) {
      if (pos == view.size() || view[pos] == ',') {
        if (field == fields.size()) {
          fail(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": expected 3 fields");
        }
        fields[field++] = view.substr(start, pos - start);
        start = pos + 1;
      }
    }
    if (field != fields.size()) {
      fail(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": expected 3 fields");
    }
    const double left = parse_double(fields[0], line_no);
    const double right = parse_double(fields[1], line_no);
    const double count = parse_double(fields[2], line_no);
    if (edges.empty()) {
      edges.push_back(left);
    } else if (left != edges.back()) {
      fail(ErrorCode::ParseError,
           "line " + std::to_string(line_no) + ": bin_left does not match previous bin_right");
    }
    edges.push_back(right);
    counts.push_back(count);
  }
  if (!saw_header) fail(ErrorCode::ParseError, "missing header");
  if (counts.empty()) fail(ErrorCode::ParseError, "no histogram rows");
  return Histogram(std::move(edges), std::move(counts));
}

Histogram read_histogram_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::ParseError, "cannot open " + path);
  return read_histogram_csv(in);
}

void write_histogram_csv(std::ostream& out, const Histogram& h) {
  out << "bin_left,bin_right,count\n";
  for (std::size_t i = 0; i < h.bin_count(); ++i) {
    out << format_double(h.bin_edges()[i]) << ',' << format_double(h.bin_edges()[i + 1]) << ','
        << format_double(h.counts()[i]) << '\n';
  }
}

std::string format_double(double v) {
  std::array<char, 32> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  (void)ec;
  return std::string(buf.data(), ptr);
}

}  // namespace cestim
