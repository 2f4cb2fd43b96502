#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "warpbank/bank.hpp"
#include "warpbank/transform.hpp"

namespace warpbank {

/// 8-bit log-magnitude image, one row per warped channel with the highest
/// center frequency on top. 255 is the global maximum, 0 the dB floor.
struct SpectrogramImage {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> pixels;  // row-major
  std::vector<int> row_m;
  std::vector<double> row_center_hz;

  std::uint8_t at(int row, int col) const {
    return pixels[static_cast<std::size_t>(row) * width + col];
  }
};

/// Resamples each channel to `columns` time positions (0 picks the densest
/// channel, at most 4096) by nearest coefficient.
SpectrogramImage render_spectrogram(const CoefficientSet& coeffs, const WarpedBank& bank,
                                    int columns = 0, double floor_db = -80.0);

void write_pgm(const std::filesystem::path& path, const SpectrogramImage& image);
void write_row_csv(const std::filesystem::path& path, const SpectrogramImage& image);

}  // namespace warpbank
