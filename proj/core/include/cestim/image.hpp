#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "cestim/data.hpp"

namespace cestim {

/// 8-bit grayscale image, row-major.
class Grayscale8 {
 public:
  Grayscale8(std::size_t width, std::size_t height, std::vector<std::uint8_t> pixels);
  Grayscale8(std::size_t width, std::size_t height, std::uint8_t fill = 0);

  std::size_t width() const noexcept { return width_; }
  std::size_t height() const noexcept { return height_; }
  std::uint8_t at(std::size_t row, std::size_t col) const noexcept { return pixels_[row * width_ + col]; }
  std::uint8_t& at(std::size_t row, std::size_t col) noexcept { return pixels_[row * width_ + col]; }
  std::span<const std::uint8_t> pixels() const noexcept { return pixels_; }

 private:
  std::size_t width_;
  std::size_t height_;
  std::vector<std::uint8_t> pixels_;
};

/// Binary PGM (P5) with maxval 255. Header comments are accepted.
Grayscale8 read_pgm(std::istream& in);
Grayscale8 read_pgm_file(const std::string& path);
void write_pgm(std::ostream& out, const Grayscale8& image);

/// Orthonormal 2-D DCT-II of one 8x8 block, output indexed [u * 8 + v] with
/// u the vertical and v the horizontal frequency.
std::vector<double> dct8x8(std::span<const double, 64> block);

struct DctHistogramOptions {
  std::size_t bins = 64;
  bool exclude_dc = true;
};

/// Histogram of |DCT coefficients| pooled over every full 8x8 block of the
/// image; partial edge blocks are dropped. Equal-width bins over
/// [0, observed max] ([0, 1] when every coefficient is zero).
Histogram dct_abs_histogram(const Grayscale8& image, const DctHistogramOptions& opts = {});

}  // namespace cestim
