#include "cestim/image.hpp"

#include <array>
#include <cctype>
#include <cmath>
#include <fstream>
#include <istream>
#include <numbers>
#include <ostream>

#include "cestim/error.hpp"

namespace cestim {

namespace {

constexpr std::size_t kBlock = 8;

// Coefficients of integer-valued blocks are either exactly zero or far above
// this; anything smaller is cancellation noise of the cosine sums.
constexpr double kZeroSnap = 1e-9;

const std::array<double, 64>& cosine_table() {
  static const std::array<double, 64> table = [] {
    std::array<double, 64> t{};
    for (std::size_t k = 0; k < kBlock; ++k) {
      const double scale = k == 0 ? std::sqrt(1.0 / kBlock) : std::sqrt(2.0 / kBlock);
      for (std::size_t x = 0; x < kBlock; ++x) {
        t[k * kBlock + x] =
            scale * std::cos(static_cast<double>((2 * x + 1) * k) * std::numbers::pi / (2.0 * kBlock));
      }
    }
    return t;
  }();
  return table;
}

// Reads the next whitespace-delimited header token, skipping '#' comments.
std::string next_token(std::istream& in) {
  std::string token;
  int c;
  while ((c = in.get()) != EOF) {
    if (c == '#') {
      while ((c = in.get()) != EOF && c != '\n') {
      }
      if (!token.empty()) break;
      continue;
    }
    if (std::isspace(c)) {
      if (!token.empty()) break;
      continue;
    }
    token.push_back(static_cast<char>(c));
  }
  return token;
}

std::size_t parse_dimension(const std::string& token, const char* what) {
  if (token.empty() || token.find_first_not_of("0123456789") != std::string::npos) {
    fail(ErrorCode::ParseError, std::string("PGM: bad ") + what);
  }
  return static_cast<std::size_t>(std::stoull(token));
}

}  // namespace

Grayscale8::Grayscale8(std::size_t width, std::size_t height, std::vector<std::uint8_t> pixels)
    : width_(width), height_(height), pixels_(std::move(pixels)) {
  if (pixels_.size() != width_ * height_) {
    fail(ErrorCode::InvalidArgument, "pixel buffer does not match image dimensions");
  }
}

Grayscale8::Grayscale8(std::size_t width, std::size_t height, std::uint8_t fill)
    : width_(width), height_(height), pixels_(width * height, fill) {}

Grayscale8 read_pgm(std::istream& in) {
  if (next_token(in) != "P5") fail(ErrorCode::ParseError, "PGM: expected magic 'P5'");
  const std::size_t width = parse_dimension(next_token(in), "width");
  const std::size_t height = parse_dimension(next_token(in), "height");
  const std::size_t maxval = parse_dimension(next_token(in), "maxval");
  if (maxval != 255) fail(ErrorCode::ParseError, "PGM: only maxval 255 is supported");
  // next_token consumed exactly one whitespace byte after maxval.
  std::vector<std::uint8_t> pixels(width * height);
  in.read(reinterpret_cast<char*>(pixels.data()), static_cast<std::streamsize>(pixels.size()));
  if (static_cast<std::size_t>(in.gcount()) != pixels.size()) {
    fail(ErrorCode::ParseError, "PGM: truncated pixel data");
  }
  return Grayscale8(width, height, std::move(pixels));
}

Grayscale8 read_pgm_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::ParseError, "cannot open " + path);
  return read_pgm(in);
}

void write_pgm(std::ostream& out, const Grayscale8& image) {
  out << "P5\n" << image.width() << ' ' << image.height() << "\n255\n";
  out.write(reinterpret_cast<const char*>(image.pixels().data()),
            static_cast<std::streamsize>(image.pixels().size()));
}

std::vector<double> dct8x8(std::span<const double, 64> block) {
  const auto& c = cosine_table();
  // Separable: rows first, then columns.
  std::array<double, 64> tmp{};
  for (std::size_t row = 0; row < kBlock; ++row) {
    for (std::size_t v = 0; v < kBlock; ++v) {
      double acc = 0.0;
      for (std::size_t x = 0; x < kBlock; ++x) acc += c[v * kBlock + x] * block[row * kBlock + x];
      tmp[row * kBlock + v] = acc;
    }
  }
  std::vector<double> out(64);
  for (std::size_t u = 0; u < kBlock; ++u) {
    for (std::size_t v = 0; v < kBlock; ++v) {
      double acc = 0.0;
      for (std::size_t y = 0; y < kBlock; ++y) acc += c[u * kBlock + y] * tmp[y * kBlock + v];
      out[u * kBlock + v] = acc;
    }
  }
  return out;
}

Histogram dct_abs_histogram(const Grayscale8& image, const DctHistogramOptions& opts) {
  if (image.width() < kBlock || image.height() < kBlock) {
    fail(ErrorCode::ImageTooSmall, "image must be at least 8x8");
  }
  const std::size_t blocks_x = image.width() / kBlock;
  const std::size_t blocks_y = image.height() / kBlock;

  std::vector<double> magnitudes;
  magnitudes.reserve(blocks_x * blocks_y * 64);
  std::array<double, 64> block{};
  for (std::size_t by = 0; by < blocks_y; ++by) {
    for (std::size_t bx = 0; bx < blocks_x; ++bx) {
      for (std::size_t r = 0; r < kBlock; ++r) {
        for (std::size_t col = 0; col < kBlock; ++col) {
          block[r * kBlock + col] = image.at(by * kBlock + r, bx * kBlock + col);
        }
      }
      const std::vector<double> coeffs = dct8x8(block);
      for (std::size_t k = opts.exclude_dc ? 1 : 0; k < coeffs.size(); ++k) {
        const double m = std::abs(coeffs[k]);
        magnitudes.push_back(m < kZeroSnap ? 0.0 : m);
      }
    }
  }
  return bin_nonnegative(magnitudes, opts.bins);
}

}  // namespace cestim
