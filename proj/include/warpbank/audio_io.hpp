#pragma once

#include <filesystem>
#include <span>
#include <vector>

namespace warpbank {

struct AudioData {
  double sample_rate = 0.0;
  std::vector<std::vector<double>> channels;  // one vector per audio channel
};

enum class WavEncoding { Pcm16, Pcm24, Float32 };

/// Reads PCM 16/24-bit or IEEE float-32 WAV files. PCM samples are scaled to
/// [-1, 1).
AudioData read_wav(const std::filesystem::path& path);
void write_wav(const std::filesystem::path& path, std::span<const double> samples,
               double sample_rate, WavEncoding encoding = WavEncoding::Float32);

/// Headerless little-endian float64.
std::vector<double> read_raw_f64(const std::filesystem::path& path);
void write_raw_f64(const std::filesystem::path& path, std::span<const double> samples);

/// Dispatches on the extension: .wav, otherwise raw float64.
AudioData read_signal(const std::filesystem::path& path, double default_rate);
void write_signal(const std::filesystem::path& path, std::span<const double> samples,
                  double sample_rate);

}  // namespace warpbank
