#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "warpbank/bank.hpp"
#include "warpbank/fft.hpp"

namespace warpbank {

struct ChannelCoefficients {
  int m = 0;
  std::vector<cplx> values;  // c[m][n], n = 0 .. L/a_m - 1
  bool operator==(const ChannelCoefficients&) const = default;
};

/// Ragged per-channel coefficients c[m][n] = <f, T_{n a_m} g_m-check>, with
/// n = 0 at time 0 and no per-channel phase ramp.
struct CoefficientSet {
  std::uint64_t fingerprint = 0;
  std::vector<ChannelCoefficients> channels;

  double energy() const noexcept;
  std::vector<std::pair<int, int>> geometry() const;
  bool operator==(const CoefficientSet&) const = default;
};

/// Analysis of a length-L signal. Throws LengthMismatch.
CoefficientSet analyze(std::span<const cplx> signal, const WarpedBank& bank);
CoefficientSet analyze(std::span<const double> signal, const WarpedBank& bank);

/// Analysis from the unitary spectrum of the signal.
CoefficientSet analyze_spectrum(std::span<const cplx> spectrum,
                                const WarpedBank& bank);

/// sum_{m,n} c[m][n] times atom (m, n) of `bank`. Throws FingerprintMismatch
/// when the coefficients were produced by a different geometry.
std::vector<cplx> synthesize(const CoefficientSet& coeffs, const WarpedBank& bank);
std::vector<cplx> synthesize_spectrum(const CoefficientSet& coeffs,
                                      const WarpedBank& bank);

struct RealSynthesis {
  std::vector<double> samples;
  double imaginary_residue = 0.0;  // l2 norm of the discarded imaginary part
};

/// Synthesis for real signals. On the positive half-line the negative
/// frequencies are filled in by conjugate symmetry.
RealSynthesis synthesize_real(const CoefficientSet& coeffs, const WarpedBank& bank);

/// S f = synthesize(analyze(f, bank), bank).
std::vector<cplx> apply_frame_operator(std::span<const cplx> signal,
                                       const WarpedBank& bank);
std::vector<cplx> apply_frame_operator_spectrum(std::span<const cplx> spectrum,
                                                const WarpedBank& bank);

}  // namespace warpbank
