#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "warpbank/transform.hpp"

namespace warpbank {

inline constexpr std::uint32_t kCoefficientFormatVersion = 1;

/// WFBC container, all little-endian:
///   "WFBC", u32 version, u32 channel count,
///   per channel: i32 m, u32 length, length x (f64 re, f64 im).
std::vector<std::uint8_t> encode_coefficients(const CoefficientSet& coeffs);

/// Throws Error(FormatError) on bad magic, unknown version, truncation or
/// trailing bytes. The fingerprint is recomputed from the channel layout.
CoefficientSet decode_coefficients(std::span<const std::uint8_t> bytes);

void write_coefficients(const std::filesystem::path& path, const CoefficientSet& coeffs);
CoefficientSet read_coefficients(const std::filesystem::path& path);

}  // namespace warpbank
