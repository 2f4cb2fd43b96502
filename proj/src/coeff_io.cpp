#include "warpbank/coeff_io.hpp"

#include <cstring>
#include <fstream>
#include <iterator>
#include <string>

#include "warpbank/errors.hpp"

namespace warpbank {

namespace {

template <typename T>
void put(std::vector<std::uint8_t>& out, T v) {
  std::uint8_t buf[sizeof(T)];
  std::memcpy(buf, &v, sizeof(T));
  out.insert(out.end(), buf, buf + sizeof(T));
}

class Reader {
 public:
  explicit Reader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  template <typename T>
  T take() {
    if (pos_ + sizeof(T) > bytes_.size()) {
      throw Error(ErrorCode::FormatError, "coefficient file is truncated");
    }
    T v;
    std::memcpy(&v, bytes_.data() + pos_, sizeof(T));
    pos_ += sizeof(T);
    return v;
  }

  std::size_t remaining() const { return bytes_.size() - pos_; }

 private:
  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 0;
};

}  // namespace

std::vector<std::uint8_t> encode_coefficients(const CoefficientSet& coeffs) {
  std::vector<std::uint8_t> out;
  out.insert(out.end(), {'W', 'F', 'B', 'C'});
  put<std::uint32_t>(out, kCoefficientFormatVersion);
  put<std::uint32_t>(out, static_cast<std::uint32_t>(coeffs.channels.size()));
  for (const auto& ch : coeffs.channels) {
    put<std::int32_t>(out, ch.m);
    put<std::uint32_t>(out, static_cast<std::uint32_t>(ch.values.size()));
    for (const auto& v : ch.values) {
      put<double>(out, v.real());
      put<double>(out, v.imag());
    }
  }
  return out;
}

CoefficientSet decode_coefficients(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 4 || std::memcmp(bytes.data(), "WFBC", 4) != 0) {
    throw Error(ErrorCode::FormatError, "missing WFBC magic");
  }
  Reader reader(bytes.subspan(4));
  const auto version = reader.take<std::uint32_t>();
  if (version != kCoefficientFormatVersion) {
    throw Error(ErrorCode::FormatError,
                "unsupported WFBC version " + std::to_string(version));
  }
  const auto count = reader.take<std::uint32_t>();
  CoefficientSet out;
  for (std::uint32_t c = 0; c < count; ++c) {
    ChannelCoefficients ch;
    ch.m = reader.take<std::int32_t>();
    const auto length = reader.take<std::uint32_t>();
    if (reader.remaining() / 16 < length) {
      throw Error(ErrorCode::FormatError, "coefficient file is truncated");
    }
    ch.values.resize(length);
    for (auto& v : ch.values) {
      const double re = reader.take<double>();
      const double im = reader.take<double>();
      v = {re, im};
    }
    out.channels.push_back(std::move(ch));
  }
  if (reader.remaining() != 0) {
    throw Error(ErrorCode::FormatError, "trailing bytes after the last channel");
  }
  const auto geometry = out.geometry();
  out.fingerprint = geometry_fingerprint(geometry);
  return out;
}

void write_coefficients(const std::filesystem::path& path, const CoefficientSet& coeffs) {
  const auto bytes = encode_coefficients(coeffs);
  std::ofstream file(path, std::ios::binary);
  if (!file) throw Error(ErrorCode::InvalidParameter, "cannot write " + path.string());
  file.write(reinterpret_cast<const char*>(bytes.data()),
             static_cast<std::streamsize>(bytes.size()));
}

CoefficientSet read_coefficients(const std::filesystem::path& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) throw Error(ErrorCode::FormatError, "cannot read " + path.string());
  const std::vector<std::uint8_t> bytes{std::istreambuf_iterator<char>(file),
                                        std::istreambuf_iterator<char>()};
  return decode_coefficients(bytes);
}

}  // namespace warpbank
