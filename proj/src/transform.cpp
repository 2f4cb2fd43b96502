#include "warpbank/transform.hpp"

#include <cmath>
#include <string>

#include "warpbank/errors.hpp"
#include "warpbank/parallel.hpp"

namespace warpbank {

namespace {

void check_length(std::size_t n, const WarpedBank& bank) {
  if (n != static_cast<std::size_t>(bank.signal_length())) {
    throw Error(ErrorCode::LengthMismatch,
                "signal has " + std::to_string(n) + " samples, bank expects " +
                    std::to_string(bank.signal_length()));
  }
}

void check_geometry(const CoefficientSet& coeffs, const WarpedBank& bank) {
  const auto& chans = bank.channels();
  bool ok = coeffs.fingerprint == bank.fingerprint() &&
            coeffs.channels.size() == chans.size();
  for (std::size_t i = 0; ok && i < chans.size(); ++i) {
    ok = coeffs.channels[i].m == chans[i].m &&
         static_cast<int>(coeffs.channels[i].values.size()) ==
             chans[i].coefficient_count(bank.signal_length());
  }
  if (!ok) {
    throw Error(ErrorCode::FingerprintMismatch,
                "coefficients do not match the channel layout of this bank");
  }
}

// Folds conj(g_m) X onto N_m bins and inverse-transforms on the decimated
// lattice.
std::vector<cplx> analyze_channel(std::span<const cplx> spectrum, const Channel& ch,
                                  const GridSpec& grid) {
  const int n_coeffs = ch.coefficient_count(grid.length);
  std::vector<cplx> folded(static_cast<std::size_t>(n_coeffs), cplx{});
  for (std::size_t i = 0; i < ch.response.size(); ++i) {
    const std::size_t j = grid.storage_index(ch.first_bin + static_cast<int>(i));
    folded[j % static_cast<std::size_t>(n_coeffs)] += spectrum[j] * ch.response[i];
  }
  fft_backward(folded);
  return folded;
}

}  // namespace

double CoefficientSet::energy() const noexcept {
  double acc = 0.0;
  for (const auto& ch : channels) {
    for (const auto& v : ch.values) acc += std::norm(v);
  }
  return acc;
}

std::vector<std::pair<int, int>> CoefficientSet::geometry() const {
  std::vector<std::pair<int, int>> out;
  out.reserve(channels.size());
  for (const auto& ch : channels) {
    out.emplace_back(ch.m, static_cast<int>(ch.values.size()));
  }
  return out;
}

CoefficientSet analyze_spectrum(std::span<const cplx> spectrum,
                                const WarpedBank& bank) {
  check_length(spectrum.size(), bank);
  const auto& chans = bank.channels();
  CoefficientSet out;
  out.fingerprint = bank.fingerprint();
  out.channels.resize(chans.size());
  parallel_chunks(chans.size(), [&](std::size_t, std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      out.channels[i].m = chans[i].m;
      out.channels[i].values = analyze_channel(spectrum, chans[i], bank.grid());
    }
  });
  return out;
}

CoefficientSet analyze(std::span<const cplx> signal, const WarpedBank& bank) {
  check_length(signal.size(), bank);
  const auto spectrum = unitary_spectrum(signal);
  return analyze_spectrum(spectrum, bank);
}

CoefficientSet analyze(std::span<const double> signal, const WarpedBank& bank) {
  std::vector<cplx> complex_signal(signal.begin(), signal.end());
  return analyze(complex_signal, bank);
}

std::vector<cplx> synthesize_spectrum(const CoefficientSet& coeffs,
                                      const WarpedBank& bank) {
  check_geometry(coeffs, bank);
  const GridSpec& grid = bank.grid();
  const auto& chans = bank.channels();
  const std::size_t workers = worker_count();
  std::vector<std::vector<cplx>> partial(
      std::min(workers, std::max<std::size_t>(chans.size(), 1)));
  parallel_chunks(chans.size(), [&](std::size_t w, std::size_t begin, std::size_t end) {
    auto& acc = partial[w];
    acc.assign(static_cast<std::size_t>(grid.length), cplx{});
    for (std::size_t i = begin; i < end; ++i) {
      const Channel& ch = chans[i];
      std::vector<cplx> lattice = coeffs.channels[i].values;
      fft_forward(lattice);
      const std::size_t n_coeffs = lattice.size();
      for (std::size_t b = 0; b < ch.response.size(); ++b) {
        const std::size_t j = grid.storage_index(ch.first_bin + static_cast<int>(b));
        acc[j] += ch.response[b] * lattice[j % n_coeffs];
      }
    }
  });
  std::vector<cplx> spectrum(static_cast<std::size_t>(grid.length), cplx{});
  for (const auto& acc : partial) {
    if (acc.empty()) continue;
    for (std::size_t j = 0; j < spectrum.size(); ++j) spectrum[j] += acc[j];
  }
  return spectrum;
}

std::vector<cplx> synthesize(const CoefficientSet& coeffs, const WarpedBank& bank) {
  return unitary_inverse(synthesize_spectrum(coeffs, bank));
}

RealSynthesis synthesize_real(const CoefficientSet& coeffs, const WarpedBank& bank) {
  auto spectrum = synthesize_spectrum(coeffs, bank);
  const std::size_t L = spectrum.size();
  if (bank.grid().domain == Domain::PositiveHalfLine) {
    for (std::size_t j = 1; j < L / 2; ++j) spectrum[L - j] = std::conj(spectrum[j]);
  }
  const auto signal = unitary_inverse(spectrum);
  RealSynthesis out;
  out.samples.reserve(L);
  double residue = 0.0;
  for (const auto& v : signal) {
    out.samples.push_back(v.real());
    residue += v.imag() * v.imag();
  }
  out.imaginary_residue = std::sqrt(residue);
  return out;
}

std::vector<cplx> apply_frame_operator_spectrum(std::span<const cplx> spectrum,
                                                const WarpedBank& bank) {
  return synthesize_spectrum(analyze_spectrum(spectrum, bank), bank);
}

std::vector<cplx> apply_frame_operator(std::span<const cplx> signal,
                                       const WarpedBank& bank) {
  return synthesize(analyze(signal, bank), bank);
}

}  // namespace warpbank
