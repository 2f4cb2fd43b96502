#include "warpbank/spectrogram.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>

#include "warpbank/errors.hpp"

namespace warpbank {

SpectrogramImage render_spectrogram(const CoefficientSet& coeffs, const WarpedBank& bank,
                                    int columns, double floor_db) {
  if (coeffs.fingerprint != bank.fingerprint()) {
    throw Error(ErrorCode::FingerprintMismatch,
                "coefficients do not match the channel layout of this bank");
  }
  const auto& chans = bank.channels();
  std::vector<std::size_t> rows;
  for (std::size_t i = 0; i < chans.size(); ++i) {
    if (chans[i].kind == ChannelKind::Warped) rows.push_back(i);
  }
  std::stable_sort(rows.begin(), rows.end(), [&](std::size_t a, std::size_t b) {
    return chans[a].center_hz > chans[b].center_hz;
  });

  const int L = bank.signal_length();
  if (columns <= 0) {
    columns = 1;
    for (std::size_t i : rows) columns = std::max(columns, chans[i].coefficient_count(L));
    columns = std::min(columns, 4096);
  }

  SpectrogramImage img;
  img.width = columns;
  img.height = static_cast<int>(rows.size());
  std::vector<double> mags(static_cast<std::size_t>(img.width) * img.height, 0.0);
  double peak = 0.0;
  for (int r = 0; r < img.height; ++r) {
    const std::size_t i = rows[static_cast<std::size_t>(r)];
    const auto& values = coeffs.channels[i].values;
    img.row_m.push_back(chans[i].m);
    img.row_center_hz.push_back(chans[i].center_hz);
    const auto n = static_cast<long>(values.size());
    for (int col = 0; col < img.width; ++col) {
      const double t = static_cast<double>(col) * L / img.width;
      const long idx = std::lround(t / chans[i].a) % n;
      const double v = std::abs(values[static_cast<std::size_t>(idx)]);
      mags[static_cast<std::size_t>(r) * img.width + col] = v;
      peak = std::max(peak, v);
    }
  }

  img.pixels.resize(mags.size());
  for (std::size_t k = 0; k < mags.size(); ++k) {
    double db = floor_db;
    if (peak > 0.0 && mags[k] > 0.0) db = std::max(floor_db, 20.0 * std::log10(mags[k] / peak));
    img.pixels[k] = static_cast<std::uint8_t>(std::lround(255.0 * (db - floor_db) / -floor_db));
  }
  return img;
}

void write_pgm(const std::filesystem::path& path, const SpectrogramImage& image) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::InvalidParameter, "cannot write " + path.string());
  out << "P5\n" << image.width << ' ' << image.height << "\n255\n";
  out.write(reinterpret_cast<const char*>(image.pixels.data()),
            static_cast<std::streamsize>(image.pixels.size()));
}

void write_row_csv(const std::filesystem::path& path, const SpectrogramImage& image) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::InvalidParameter, "cannot write " + path.string());
  out.precision(17);
  out << "row,m,center_hz\n";
  for (int r = 0; r < image.height; ++r) {
    out << r << ',' << image.row_m[static_cast<std::size_t>(r)] << ','
        << image.row_center_hz[static_cast<std::size_t>(r)] << '\n';
  }
}

}  // namespace warpbank
