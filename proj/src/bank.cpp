#include "warpbank/bank.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "warpbank/errors.hpp"

namespace warpbank {

namespace {

constexpr int kMaxChannels = 1 << 20;

std::vector<int> divisors_of(int n) {
  std::vector<int> out;
  for (int i = 1; static_cast<long long>(i) * i <= n; ++i) {
    if (n % i == 0) {
      out.push_back(i);
      if (i != n / i) out.push_back(n / i);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

int largest_divisor_at_most(const std::vector<int>& divisors, double limit) {
  if (!(limit >= 1.0)) return 1;
  auto it = std::upper_bound(divisors.begin(), divisors.end(), limit,
                             [](double v, int d) { return v < d; });
  return *std::prev(it);
}

// Samples channel m over the bins its warped support can touch and trims
// the zero tails.
Channel sample_warped_channel(const WarpingFunction& warp,
                              const PrototypeWindow& window, const GridSpec& grid,
                              int m, int a, double a_continuous) {
  Channel ch;
  ch.m = m;
  ch.kind = ChannelKind::Warped;
  ch.center_hz = warp.eval_inv(m);
  ch.a = a;
  ch.a_continuous = a_continuous;

  const int k_first = grid.first_warped_bin();
  const int k_last = grid.last_warped_bin();
  const double bins_per_hz = grid.length / grid.sample_rate;
  const double lo_hz = warp.eval_inv(m + window.support_lo());
  const double hi_hz = warp.eval_inv(m + window.support_hi());

  auto clamp_bin = [&](double v) {
    if (!(v > k_first)) return k_first;
    if (!(v < k_last)) return k_last;
    return static_cast<int>(v);
  };
  const int k_lo = clamp_bin(std::floor(lo_hz * bins_per_hz) - 1.0);
  const int k_hi = clamp_bin(std::ceil(hi_hz * bins_per_hz) + 1.0);

  const double scale = std::sqrt(static_cast<double>(a) / grid.length);
  std::vector<double> values;
  bool any_nonzero = false;
  int first_nonzero = 0;
  int last_nonzero = 0;
  if (hi_hz * bins_per_hz >= k_first - 1 && lo_hz * bins_per_hz <= k_last + 1) {
    values.reserve(static_cast<std::size_t>(k_hi - k_lo + 1));
    for (int k = k_lo; k <= k_hi; ++k) {
      const double xi = grid.bin_frequency(k);
      const double v = window(warp.eval(xi) - m);
      values.push_back(scale * v);
      if (v != 0.0) {
        if (!any_nonzero) first_nonzero = k;
        any_nonzero = true;
        last_nonzero = k;
      }
    }
  }
  if (!any_nonzero) {
    const double center_bin = std::round(ch.center_hz * bins_per_hz);
    ch.first_bin = clamp_bin(center_bin);
    return ch;
  }
  ch.first_bin = first_nonzero;
  ch.response.assign(values.begin() + (first_nonzero - k_lo),
                     values.begin() + (last_nonzero - k_lo + 1));
  return ch;
}

Channel residual_channel(const GridSpec& grid, ChannelKind kind) {
  Channel ch;
  ch.kind = kind;
  const bool dc = kind == ChannelKind::ResidualDc;
  ch.m = dc ? kDcChannelIndex : kNyquistChannelIndex;
  ch.first_bin = dc ? 0 : grid.length / 2;
  ch.center_hz = grid.bin_frequency(ch.first_bin);
  ch.a = grid.length;
  ch.response = {1.0};
  return ch;
}

}  // namespace

void GridSpec::validate() const {
  if (length < 2 || length % 2 != 0) {
    throw Error(ErrorCode::InvalidParameter,
                "signal length L must be even and at least 2");
  }
  if (!(sample_rate > 0.0) || !std::isfinite(sample_rate)) {
    throw Error(ErrorCode::InvalidParameter, "sample rate must be positive");
  }
}

std::vector<std::size_t> GridSpec::active_bins() const {
  std::vector<std::size_t> bins;
  if (domain == Domain::FullLine) {
    for (int k = -length / 2 + 1; k <= length / 2; ++k) bins.push_back(storage_index(k));
  } else {
    for (int k = 0; k <= length / 2; ++k) bins.push_back(storage_index(k));
  }
  return bins;
}

bool WarpedBank::painless() const noexcept {
  return std::all_of(channels_.begin(), channels_.end(), [&](const Channel& ch) {
    return ch.painless(grid_.length);
  });
}

std::uint64_t geometry_fingerprint(std::span<const std::pair<int, int>> geometry) {
  // FNV-1a over little-endian 32-bit words.
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto mix = [&h](std::uint32_t word) {
    for (int i = 0; i < 4; ++i) {
      h ^= (word >> (8 * i)) & 0xffu;
      h *= 0x100000001b3ULL;
    }
  };
  mix(static_cast<std::uint32_t>(geometry.size()));
  for (const auto& [m, count] : geometry) {
    mix(static_cast<std::uint32_t>(m));
    mix(static_cast<std::uint32_t>(count));
  }
  return h;
}

std::uint64_t WarpedBank::fingerprint() const noexcept {
  std::vector<std::pair<int, int>> geometry;
  geometry.reserve(channels_.size());
  for (const auto& ch : channels_) {
    geometry.emplace_back(ch.m, ch.coefficient_count(grid_.length));
  }
  return geometry_fingerprint(geometry);
}

bool WarpedBank::in_warped_hull(double freq_hz) const noexcept {
  return freq_hz >= grid_.bin_frequency(grid_.first_warped_bin()) &&
         freq_hz <= grid_.bin_frequency(grid_.last_warped_bin());
}

const Channel* WarpedBank::find_channel(int m) const noexcept {
  auto it = std::lower_bound(channels_.begin(), channels_.end(), m,
                             [](const Channel& ch, int key) { return ch.m < key; });
  return it != channels_.end() && it->m == m ? &*it : nullptr;
}

ChannelRange WarpedBank::candidate_channels(double freq_hz) const {
  if (!in_warped_hull(freq_hz)) return {};
  const double f = warping_.eval(freq_hz);
  return {static_cast<int>(std::floor(f - prototype_.support_hi())) + 1,
          static_cast<int>(std::floor(f - prototype_.support_lo()))};
}

double WarpedBank::primal_sum_of_squares(double freq_hz) const {
  double acc = 0.0;
  for (const auto& ch : channels_) {
    if (ch.kind != ChannelKind::Warped && freq_hz == ch.center_hz) acc += 1.0;
  }
  const ChannelRange range = candidate_channels(freq_hz);
  for (int m = range.m_min; m <= range.m_max; ++m) {
    if (find_channel(m) == nullptr) continue;
    const double v = prototype_(warping_.eval(freq_hz) - m);
    acc += v * v;
  }
  return acc;
}

double WarpedBank::channel_value(const Channel& ch, double freq_hz) const {
  double value = 0.0;
  if (ch.kind != ChannelKind::Warped) {
    value = freq_hz == ch.center_hz ? 1.0 : 0.0;
  } else if (in_warped_hull(freq_hz)) {
    value = prototype_(warping_.eval(freq_hz) - ch.m);
  }
  if (value == 0.0 || kind_ != BankKind::Dual) return value;
  return value / primal_sum_of_squares(freq_hz);
}

ChannelRange channel_range(const WarpingFunction& warp,
                           const PrototypeWindow& window, const GridSpec& grid) {
  grid.validate();
  const double f_min = warp.eval(grid.bin_frequency(grid.first_warped_bin()));
  const double f_max = warp.eval(grid.bin_frequency(grid.last_warped_bin()));
  // [c + m, d + m) meets [f_min, f_max] iff m + c <= f_max and m + d > f_min.
  const double lo = std::floor(f_min - window.support_hi()) + 1.0;
  const double hi = std::floor(f_max - window.support_lo());
  if (!std::isfinite(lo) || !std::isfinite(hi) || hi - lo > kMaxChannels) {
    throw Error(ErrorCode::InvalidParameter,
                "warped grid spans too many channels; adjust c, d or the grid");
  }
  ChannelRange range{static_cast<int>(lo), static_cast<int>(hi)};
  if (range.m_max < range.m_min) {
    throw Error(ErrorCode::EmptyBank, "no channel intersects the frequency grid");
  }
  return range;
}

std::vector<double> natural_factors(const WarpingFunction& warp, double a_tilde,
                                    ChannelRange range) {
  if (!(a_tilde > 0.0)) {
    throw Error(ErrorCode::InvalidParameter, "a_tilde must be positive");
  }
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(std::max(range.size(), 0)));
  for (int m = range.m_min; m <= range.m_max; ++m) {
    out.push_back(a_tilde / (warp.moderateness_constant() * warp.eval_v(m)));
  }
  return out;
}

double default_natural_a_tilde(const WarpingFunction& warp,
                               const PrototypeWindow& window) {
  return 1.0 / (warp.eval_inv(window.support_hi()) -
                warp.eval_inv(window.support_lo()));
}

std::vector<double> painless_factors(const WarpingFunction& warp, double lo,
                                     double hi, ChannelRange range) {
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(std::max(range.size(), 0)));
  for (int m = range.m_min; m <= range.m_max; ++m) {
    // F^-1 maps into the domain, so the lower edge is already clamped at 0 on
    // the half-line.
    out.push_back(1.0 / (warp.eval_inv(hi + m) - warp.eval_inv(lo + m)));
  }
  return out;
}

int round_factor_to_grid(double a_real, const GridSpec& grid) {
  grid.validate();
  return largest_divisor_at_most(divisors_of(grid.length), a_real * grid.sample_rate);
}

std::vector<int> round_factors_to_grid(std::span<const double> a_real,
                                       const GridSpec& grid) {
  grid.validate();
  const auto divisors = divisors_of(grid.length);
  std::vector<int> out;
  out.reserve(a_real.size());
  for (double a : a_real) {
    out.push_back(largest_divisor_at_most(divisors, a * grid.sample_rate));
  }
  return out;
}

WarpedBank build_bank(const WarpingFunction& warp, const PrototypeWindow& window,
                      const GridSpec& grid, const FactorPolicy& policy,
                      const BuildOptions& options) {
  grid.validate();
  if (grid.domain != warp.domain()) {
    throw Error(ErrorCode::InvalidParameter,
                "grid domain does not match the warping function's domain");
  }
  WarpedBank bank(warp, window, grid);
  bank.policy_ = policy;
  bank.allow_holes_ = options.allow_coverage_holes;

  std::vector<int> ms;
  std::vector<double> a_real;
  std::vector<int> a_samples;
  switch (policy.kind) {
    case FactorPolicy::Kind::Natural: {
      const ChannelRange range = channel_range(warp, window, grid);
      double a_tilde = policy.a_tilde;
      if (!(a_tilde > 0.0)) a_tilde = default_natural_a_tilde(warp, window);
      bank.policy_.a_tilde = a_tilde;
      a_real = natural_factors(warp, a_tilde, range);
      for (int m = range.m_min; m <= range.m_max; ++m) ms.push_back(m);
      a_samples = round_factors_to_grid(a_real, grid);
      break;
    }
    case FactorPolicy::Kind::Painless: {
      const ChannelRange range = channel_range(warp, window, grid);
      a_real = painless_factors(warp, window.support_lo(), window.support_hi(), range);
      for (int m = range.m_min; m <= range.m_max; ++m) ms.push_back(m);
      a_samples = round_factors_to_grid(a_real, grid);
      break;
    }
    case FactorPolicy::Kind::Explicit: {
      if (policy.explicit_factors.empty()) {
        throw Error(ErrorCode::EmptyBank, "explicit factor list is empty");
      }
      int previous = INT_MIN;
      for (const auto& [m, a] : policy.explicit_factors) {
        if (m <= previous) {
          throw Error(ErrorCode::InvalidParameter,
                      "explicit channels must be listed with increasing m");
        }
        if (a < 1 || grid.length % a != 0) {
          throw Error(ErrorCode::InvalidParameter,
                      "explicit factor " + std::to_string(a) +
                          " does not divide L = " + std::to_string(grid.length));
        }
        previous = m;
        ms.push_back(m);
        a_samples.push_back(a);
        a_real.push_back(0.0);
      }
      break;
    }
  }

  if (grid.has_residual_channels()) {
    bank.channels_.push_back(residual_channel(grid, ChannelKind::ResidualDc));
  }
  for (std::size_t i = 0; i < ms.size(); ++i) {
    bank.channels_.push_back(
        sample_warped_channel(warp, window, grid, ms[i], a_samples[i], a_real[i]));
  }
  if (grid.has_residual_channels()) {
    bank.channels_.push_back(residual_channel(grid, ChannelKind::ResidualNyquist));
  }

  if (!options.allow_coverage_holes) {
    const auto diag = diagonal(bank);
    const auto bins = grid.active_bins();
    for (std::size_t i = 0; i < diag.size(); ++i) {
      if (!(diag[i] > 0.0)) {
        const int k = static_cast<int>(bins[i]) > grid.length / 2
                          ? static_cast<int>(bins[i]) - grid.length
                          : static_cast<int>(bins[i]);
        throw Error(ErrorCode::CoverageError,
                    "frame-operator diagonal vanishes at " +
                        std::to_string(grid.bin_frequency(k)) +
                        " Hz; the translates of the window do not cover the grid");
      }
    }
  }
  return bank;
}

std::vector<double> diagonal_full(const WarpedBank& bank) {
  const GridSpec& grid = bank.grid();
  std::vector<double> diag(static_cast<std::size_t>(grid.length), 0.0);
  for (const auto& ch : bank.channels()) {
    const double weight = static_cast<double>(grid.length) / ch.a;
    for (std::size_t i = 0; i < ch.response.size(); ++i) {
      const double g = ch.response[i];
      diag[grid.storage_index(ch.first_bin + static_cast<int>(i))] += weight * g * g;
    }
  }
  return diag;
}

std::vector<double> diagonal(const WarpedBank& bank) {
  const auto full = diagonal_full(bank);
  std::vector<double> out;
  for (std::size_t j : bank.grid().active_bins()) out.push_back(full[j]);
  return out;
}

WarpedBank painless_dual(const WarpedBank& bank) {
  const int L = bank.signal_length();
  for (const auto& ch : bank.channels()) {
    if (!ch.painless(L)) {
      throw Error(ErrorCode::NotPainless,
                  "channel m = " + std::to_string(ch.m) + " occupies " +
                      std::to_string(ch.response.size()) + " bins but has only " +
                      std::to_string(ch.coefficient_count(L)) +
                      " time positions; the painless support condition fails");
    }
  }
  const auto diag = diagonal_full(bank);
  for (std::size_t j : bank.grid().active_bins()) {
    if (!(diag[j] > 0.0)) {
      throw Error(ErrorCode::CoverageError,
                  "frame-operator diagonal vanishes on an active bin; no dual exists");
    }
  }
  WarpedBank dual = bank;
  for (auto& ch : dual.channels_) {
    for (std::size_t i = 0; i < ch.response.size(); ++i) {
      ch.response[i] /= diag[bank.grid().storage_index(ch.first_bin + static_cast<int>(i))];
    }
  }
  dual.kind_ = BankKind::Dual;
  return dual;
}

WarpedBank design_tight(const WarpingFunction& warp, const GridSpec& grid,
                        std::span<const double> coeffs, double R) {
  const PrototypeWindow window = normalize_for_tightness(make_cosine_window(coeffs, R));
  WarpedBank bank = build_bank(warp, window, grid, FactorPolicy::painless());
  bank.kind_ = BankKind::Tight;
  return bank;
}

WarpedBank design_tight(const WarpingFunction& warp, const GridSpec& grid,
                        CosineFamily family, double R) {
  const auto coeffs = cosine_family_coefficients(family);
  return design_tight(warp, grid, coeffs, R);
}

WarpedBank scale_factors(const WarpedBank& bank, int factor) {
  if (factor < 1) {
    throw Error(ErrorCode::InvalidParameter, "scaling factor must be >= 1");
  }
  const auto divisors = divisors_of(bank.signal_length());
  std::vector<std::pair<int, int>> factors;
  for (const auto& ch : bank.channels()) {
    if (ch.kind != ChannelKind::Warped) continue;
    factors.emplace_back(
        ch.m, largest_divisor_at_most(divisors, static_cast<double>(ch.a) * factor));
  }
  BuildOptions options;
  options.allow_coverage_holes = bank.allows_coverage_holes();
  return build_bank(bank.warping(), bank.prototype(), bank.grid(),
                    FactorPolicy::explicit_list(std::move(factors)), options);
}

WarpedBank with_kind(WarpedBank bank, BankKind kind) {
  if (kind == BankKind::Dual) {
    throw Error(ErrorCode::InvalidParameter, "dual banks come from painless_dual");
  }
  bank.kind_ = kind;
  return bank;
}

WarpedBank rebuild_bank(const WarpingFunction& warp, const PrototypeWindow& window,
                        const GridSpec& grid, const FactorPolicy& policy,
                        std::vector<std::pair<int, int>> factors,
                        const BuildOptions& options) {
  WarpedBank bank = build_bank(warp, window, grid,
                               FactorPolicy::explicit_list(std::move(factors)), options);
  bank.policy_ = policy;
  if (policy.kind == FactorPolicy::Kind::Explicit) return bank;
  for (auto& ch : bank.channels_) {
    if (ch.kind != ChannelKind::Warped) continue;
    const ChannelRange one{ch.m, ch.m};
    ch.a_continuous =
        policy.kind == FactorPolicy::Kind::Natural
            ? natural_factors(warp, policy.a_tilde, one).front()
            : painless_factors(warp, window.support_lo(), window.support_hi(), one).front();
  }
  return bank;
}

}  // namespace warpbank
