#include "warpbank/audio_io.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iterator>
#include <string>

#include "warpbank/errors.hpp"

namespace warpbank {

namespace {

static_assert(std::endian::native == std::endian::little,
              "file formats are little-endian; big-endian hosts need byte swaps");

std::vector<std::uint8_t> read_all(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::InvalidParameter, "cannot read " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

template <typename T>
T load(const std::uint8_t* p) {
  T v;
  std::memcpy(&v, p, sizeof(T));
  return v;
}

template <typename T>
void put(std::vector<std::uint8_t>& out, T v) {
  std::uint8_t buf[sizeof(T)];
  std::memcpy(buf, &v, sizeof(T));
  out.insert(out.end(), buf, buf + sizeof(T));
}

void put_tag(std::vector<std::uint8_t>& out, const char* tag) {
  out.insert(out.end(), tag, tag + 4);
}

[[noreturn]] void bad_wav(const std::filesystem::path& path, const std::string& why) {
  throw Error(ErrorCode::FormatError, path.string() + ": " + why);
}

}  // namespace

AudioData read_wav(const std::filesystem::path& path) {
  const auto bytes = read_all(path);
  if (bytes.size() < 12 || std::memcmp(bytes.data(), "RIFF", 4) != 0 ||
      std::memcmp(bytes.data() + 8, "WAVE", 4) != 0) {
    bad_wav(path, "not a RIFF/WAVE file");
  }
  std::uint16_t format = 0, channels = 0, bits = 0;
  std::uint32_t rate = 0;
  const std::uint8_t* data = nullptr;
  std::size_t data_size = 0;
  std::size_t pos = 12;
  while (pos + 8 <= bytes.size()) {
    const std::uint8_t* chunk = bytes.data() + pos;
    const std::uint32_t size = load<std::uint32_t>(chunk + 4);
    const std::size_t body = pos + 8;
    if (body + size > bytes.size()) {
      // Truncated writers sometimes leave a bogus data size; take what exists.
      if (std::memcmp(chunk, "data", 4) != 0) bad_wav(path, "truncated chunk");
    }
    const std::size_t avail = std::min<std::size_t>(size, bytes.size() - body);
    if (std::memcmp(chunk, "fmt ", 4) == 0) {
      if (avail < 16) bad_wav(path, "short fmt chunk");
      format = load<std::uint16_t>(bytes.data() + body);
      channels = load<std::uint16_t>(bytes.data() + body + 2);
      rate = load<std::uint32_t>(bytes.data() + body + 4);
      bits = load<std::uint16_t>(bytes.data() + body + 14);
      if (format == 0xFFFE && avail >= 26) {
        format = load<std::uint16_t>(bytes.data() + body + 24);
      }
    } else if (std::memcmp(chunk, "data", 4) == 0) {
      data = bytes.data() + body;
      data_size = avail;
    }
    pos = body + size + (size & 1u);
  }
  if (channels == 0 || rate == 0) bad_wav(path, "missing fmt chunk");
  if (data == nullptr) bad_wav(path, "missing data chunk");
  const bool pcm = format == 1 && (bits == 16 || bits == 24);
  const bool flt = format == 3 && bits == 32;
  if (!pcm && !flt) {
    bad_wav(path, "unsupported encoding (need PCM 16/24-bit or float-32)");
  }

  const std::size_t width = bits / 8;
  const std::size_t frames = data_size / (width * channels);
  AudioData out;
  out.sample_rate = rate;
  out.channels.assign(channels, std::vector<double>(frames));
  for (std::size_t f = 0; f < frames; ++f) {
    for (std::size_t c = 0; c < channels; ++c) {
      const std::uint8_t* p = data + (f * channels + c) * width;
      double v = 0.0;
      if (flt) {
        v = load<float>(p);
      } else if (bits == 16) {
        v = load<std::int16_t>(p) / 32768.0;
      } else {
        std::int32_t s = p[0] | (p[1] << 8) | (p[2] << 16);
        if (s & 0x800000) s -= 0x1000000;
        v = s / 8388608.0;
      }
      out.channels[c][f] = v;
    }
  }
  return out;
}

void write_wav(const std::filesystem::path& path, std::span<const double> samples,
               double sample_rate, WavEncoding encoding) {
  const std::uint16_t bits = encoding == WavEncoding::Pcm16 ? 16 : encoding == WavEncoding::Pcm24 ? 24 : 32;
  const std::uint16_t format = encoding == WavEncoding::Float32 ? 3 : 1;
  const std::uint32_t rate = static_cast<std::uint32_t>(std::lround(sample_rate));
  const std::uint32_t data_size = static_cast<std::uint32_t>(samples.size() * bits / 8);

  std::vector<std::uint8_t> out;
  out.reserve(44 + data_size);
  put_tag(out, "RIFF");
  put<std::uint32_t>(out, 36 + data_size);
  put_tag(out, "WAVE");
  put_tag(out, "fmt ");
  put<std::uint32_t>(out, 16);
  put<std::uint16_t>(out, format);
  put<std::uint16_t>(out, 1);
  put<std::uint32_t>(out, rate);
  put<std::uint32_t>(out, rate * bits / 8);
  put<std::uint16_t>(out, static_cast<std::uint16_t>(bits / 8));
  put<std::uint16_t>(out, bits);
  put_tag(out, "data");
  put<std::uint32_t>(out, data_size);
  for (double v : samples) {
    if (encoding == WavEncoding::Float32) {
      put<float>(out, static_cast<float>(v));
      continue;
    }
    const double full = encoding == WavEncoding::Pcm16 ? 32768.0 : 8388608.0;
    const double clipped = std::clamp(std::round(v * full), -full, full - 1.0);
    const auto s = static_cast<std::int32_t>(clipped);
    if (encoding == WavEncoding::Pcm16) {
      put<std::int16_t>(out, static_cast<std::int16_t>(s));
    } else {
      out.push_back(static_cast<std::uint8_t>(s & 0xff));
      out.push_back(static_cast<std::uint8_t>((s >> 8) & 0xff));
      out.push_back(static_cast<std::uint8_t>((s >> 16) & 0xff));
    }
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw Error(ErrorCode::InvalidParameter, "cannot write " + path.string());
  file.write(reinterpret_cast<const char*>(out.data()), static_cast<std::streamsize>(out.size()));
}

std::vector<double> read_raw_f64(const std::filesystem::path& path) {
  const auto bytes = read_all(path);
  if (bytes.size() % sizeof(double) != 0) {
    throw Error(ErrorCode::FormatError,
                path.string() + ": size is not a multiple of 8 bytes");
  }
  std::vector<double> out(bytes.size() / sizeof(double));
  std::memcpy(out.data(), bytes.data(), bytes.size());
  return out;
}

void write_raw_f64(const std::filesystem::path& path, std::span<const double> samples) {
  std::ofstream file(path, std::ios::binary);
  if (!file) throw Error(ErrorCode::InvalidParameter, "cannot write " + path.string());
  file.write(reinterpret_cast<const char*>(samples.data()),
             static_cast<std::streamsize>(samples.size_bytes()));
}

namespace {
bool is_wav(const std::filesystem::path& path) {
  auto ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
  return ext == ".wav";
}
}  // namespace

AudioData read_signal(const std::filesystem::path& path, double default_rate) {
  if (is_wav(path)) return read_wav(path);
  AudioData out;
  out.sample_rate = default_rate;
  out.channels.push_back(read_raw_f64(path));
  return out;
}

void write_signal(const std::filesystem::path& path, std::span<const double> samples,
                  double sample_rate) {
  if (is_wav(path)) {
    write_wav(path, samples, sample_rate, WavEncoding::Float32);
  } else {
    write_raw_f64(path, samples);
  }
}

}  // namespace warpbank
