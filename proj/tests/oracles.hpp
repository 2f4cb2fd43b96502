#pragma once

// Reference computations used only by the tests. They evaluate the model
// from its definitions with explicit sums and dense linear algebra, without
// the FFT paths of the library.

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

#include "warpbank/bank.hpp"
#include "warpbank/fft.hpp"
#include "warpbank/transform.hpp"

namespace oracle {

using cplx = std::complex<double>;
using warpbank::WarpedBank;

/// Sum of |theta(t - m)|^2 over every integer m that can reach t.
inline double grid_sum(const warpbank::PrototypeWindow& w, double t) {
  double acc = 0.0;
  const int lo = static_cast<int>(std::floor(t - w.support_hi())) - 2;
  const int hi = static_cast<int>(std::ceil(t - w.support_lo())) + 2;
  for (int m = lo; m <= hi; ++m) {
    const double v = w(t - m);
    acc += v * v;
  }
  return acc;
}

/// Cosine sum evaluated straight from its coefficients on [-R/2, R/2).
inline double cosine_sum(const std::vector<double>& b, double R, double t) {
  if (t < -R / 2 || t >= R / 2) return 0.0;
  double v = 0.0;
  for (std::size_t k = 0; k < b.size(); ++k) {
    v += b[k] * std::cos(2.0 * std::numbers::pi * static_cast<double>(k) * t / R);
  }
  return v;
}

/// Frequency response of channel `ch` on every storage index, recomputed
/// from the closed-form warping and window.
inline std::vector<double> response_from_formula(const WarpedBank& bank,
                                                 const warpbank::Channel& ch) {
  const auto& grid = bank.grid();
  const int L = grid.length;
  std::vector<double> g(static_cast<std::size_t>(L), 0.0);
  if (ch.kind != warpbank::ChannelKind::Warped) {
    g[grid.storage_index(ch.first_bin)] = 1.0;
    return g;
  }
  const double scale = std::sqrt(static_cast<double>(ch.a) / L);
  for (int k = grid.first_warped_bin(); k <= grid.last_warped_bin(); ++k) {
    const double xi = grid.bin_frequency(k);
    g[grid.storage_index(k)] = scale * bank.prototype()(bank.warping().eval(xi) - ch.m);
  }
  return g;
}

/// Atom (channel, n) in the time domain by an explicit inverse unitary DFT.
inline std::vector<cplx> atom(const std::vector<double>& g, int a, int n) {
  const int L = static_cast<int>(g.size());
  std::vector<cplx> h(static_cast<std::size_t>(L));
  for (int j = 0; j < L; ++j) {
    cplx acc = 0.0;
    for (int k = 0; k < L; ++k) {
      if (g[static_cast<std::size_t>(k)] == 0.0) continue;
      const double phase = 2.0 * std::numbers::pi * k * static_cast<double>(j - n * a) / L;
      acc += g[static_cast<std::size_t>(k)] * std::polar(1.0, phase);
    }
    h[static_cast<std::size_t>(j)] = acc / std::sqrt(static_cast<double>(L));
  }
  return h;
}

/// Coefficients <f, atom(m, n)> by direct inner products.
inline warpbank::CoefficientSet dense_analysis(const std::vector<cplx>& f,
                                               const WarpedBank& bank) {
  warpbank::CoefficientSet out;
  const int L = bank.signal_length();
  for (const auto& ch : bank.channels()) {
    const auto g = response_from_formula(bank, ch);
    warpbank::ChannelCoefficients cc;
    cc.m = ch.m;
    for (int n = 0; n < L / ch.a; ++n) {
      const auto h = atom(g, ch.a, n);
      cplx acc = 0.0;
      for (int j = 0; j < L; ++j) acc += f[static_cast<std::size_t>(j)] * std::conj(h[static_cast<std::size_t>(j)]);
      cc.values.push_back(acc);
    }
    out.channels.push_back(std::move(cc));
  }
  return out;
}

/// Frame operator restricted to the active bins, assembled atom by atom in
/// the frequency domain.
inline Eigen::MatrixXcd dense_frame_matrix(const WarpedBank& bank) {
  const auto& grid = bank.grid();
  const int L = grid.length;
  const auto bins = grid.active_bins();
  const auto n = static_cast<Eigen::Index>(bins.size());
  Eigen::MatrixXcd S = Eigen::MatrixXcd::Zero(n, n);
  for (const auto& ch : bank.channels()) {
    const auto g = response_from_formula(bank, ch);
    for (int t = 0; t < L / ch.a; ++t) {
      Eigen::VectorXcd v(n);
      for (Eigen::Index i = 0; i < n; ++i) {
        const auto k = static_cast<double>(bins[static_cast<std::size_t>(i)]);
        v(i) = g[bins[static_cast<std::size_t>(i)]] *
               std::polar(1.0, -2.0 * std::numbers::pi * k * t * ch.a / L);
      }
      S += v * v.adjoint();
    }
  }
  return S;
}

inline std::pair<double, double> dense_frame_bounds(const WarpedBank& bank) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(dense_frame_matrix(bank),
                                                         Eigen::EigenvaluesOnly);
  const auto& ev = solver.eigenvalues();
  return {ev.minCoeff(), ev.maxCoeff()};
}

inline std::vector<cplx> random_signal(std::mt19937_64& rng, int L) {
  std::normal_distribution<double> dist;
  std::vector<cplx> f(static_cast<std::size_t>(L));
  for (auto& v : f) v = {dist(rng), dist(rng)};
  return f;
}

/// Random signal whose spectrum lives on the active bins of `grid`. Drawn
/// in the frequency domain and brought back with the library FFT.
inline std::vector<cplx> random_active_signal(std::mt19937_64& rng,
                                              const warpbank::GridSpec& grid) {
  if (grid.domain == warpbank::Domain::FullLine) return random_signal(rng, grid.length);
  const auto draw = random_signal(rng, grid.length);
  std::vector<cplx> spec(draw.size(), 0.0);
  for (std::size_t k : grid.active_bins()) spec[k] = draw[k];
  return warpbank::unitary_inverse(spec);
}

inline double norm2(const std::vector<cplx>& v) {
  double acc = 0.0;
  for (const auto& x : v) acc += std::norm(x);
  return acc;
}

inline double relative_error(const std::vector<cplx>& x, const std::vector<cplx>& ref) {
  double diff = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) diff += std::norm(x[i] - ref[i]);
  return std::sqrt(diff / norm2(ref));
}

}  // namespace oracle
