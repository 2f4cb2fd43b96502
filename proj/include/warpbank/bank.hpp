#pragma once

#include <climits>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "warpbank/prototypes.hpp"
#include "warpbank/warping.hpp"

namespace warpbank {

/// Discrete frequency grid of a length-L signal sampled at fs Hz.
///
/// Bins are addressed by a signed index k in (-L/2, L/2] with frequency
/// k fs / L; the storage index is k mod L. On the positive half-line only
/// 0 < k < L/2 carry warped channels, and DC / Nyquist go to residual
/// channels.
struct GridSpec {
  int length = 0;
  double sample_rate = 0.0;
  Domain domain = Domain::FullLine;

  void validate() const;

  double bin_frequency(int k) const noexcept {
    return static_cast<double>(k) * sample_rate / length;
  }
  std::size_t storage_index(int k) const noexcept {
    const int r = k % length;
    return static_cast<std::size_t>(r < 0 ? r + length : r);
  }
  int first_warped_bin() const noexcept {
    return domain == Domain::FullLine ? -length / 2 + 1 : 1;
  }
  int last_warped_bin() const noexcept {
    return domain == Domain::FullLine ? length / 2 : length / 2 - 1;
  }
  bool has_residual_channels() const noexcept {
    return domain == Domain::PositiveHalfLine;
  }

  /// Storage indices of every bin the bank acts on, in increasing frequency.
  std::vector<std::size_t> active_bins() const;

  bool operator==(const GridSpec&) const = default;
};

enum class ChannelKind { Warped, ResidualDc, ResidualNyquist };

inline constexpr int kDcChannelIndex = INT_MIN;
inline constexpr int kNyquistChannelIndex = INT_MAX;

/// One filter of the bank. `response[i]` is the sampled frequency response at
/// signed bin first_bin + i, equal to sqrt(a/L) theta(F(xi) - m) for analysis
/// banks. Bins outside the stored span are zero.
struct Channel {
  int m = 0;
  ChannelKind kind = ChannelKind::Warped;
  double center_hz = 0.0;
  double a_continuous = 0.0;  // seconds, before grid rounding (0 if explicit)
  int a = 1;                  // samples, divides L
  int first_bin = 0;
  std::vector<double> response;

  int coefficient_count(int signal_length) const noexcept {
    return signal_length / a;
  }
  bool painless(int signal_length) const noexcept {
    return static_cast<int>(response.size()) <= coefficient_count(signal_length);
  }
  bool operator==(const Channel&) const = default;
};

struct ChannelRange {
  int m_min = 0;
  int m_max = -1;
  int size() const noexcept { return m_max - m_min + 1; }
};

struct FactorPolicy {
  enum class Kind { Natural, Painless, Explicit };

  Kind kind = Kind::Painless;
  double a_tilde = 0.0;                              // Natural; <= 0 picks the default
  std::vector<std::pair<int, int>> explicit_factors;  // (m, a in samples)

  static FactorPolicy natural(double a_tilde = 0.0) {
    return {Kind::Natural, a_tilde, {}};
  }
  static FactorPolicy painless() { return {Kind::Painless, 0.0, {}}; }
  static FactorPolicy explicit_list(std::vector<std::pair<int, int>> factors) {
    return {Kind::Explicit, 0.0, std::move(factors)};
  }
  bool operator==(const FactorPolicy&) const = default;
};

struct BuildOptions {
  bool allow_coverage_holes = false;
};

enum class BankKind { Analysis, Dual, Tight };

class WarpedBank {
 public:
  const WarpingFunction& warping() const noexcept { return warping_; }
  const PrototypeWindow& prototype() const noexcept { return prototype_; }
  const GridSpec& grid() const noexcept { return grid_; }
  const FactorPolicy& policy() const noexcept { return policy_; }
  const std::vector<Channel>& channels() const noexcept { return channels_; }
  BankKind kind() const noexcept { return kind_; }
  bool allows_coverage_holes() const noexcept { return allow_holes_; }
  int signal_length() const noexcept { return grid_.length; }

  bool painless() const noexcept;
  std::uint64_t fingerprint() const noexcept;

  bool operator==(const WarpedBank&) const = default;

  /// Continuous frequency response divided by sqrt(a/L): theta(F(xi) - m) for
  /// analysis banks, the painless-dual quotient for dual banks. Zero outside
  /// the range of bins the channel can occupy.
  double channel_value(const Channel& channel, double freq_hz) const;

  /// True if freq_hz lies inside the frequency hull of the warped bins.
  bool in_warped_hull(double freq_hz) const noexcept;

  /// Channel with index m, or nullptr. Channels are stored sorted by m.
  const Channel* find_channel(int m) const noexcept;

  /// Range of m whose warped support can contain freq_hz (possibly empty).
  ChannelRange candidate_channels(double freq_hz) const;

 private:
  friend WarpedBank build_bank(const WarpingFunction&, const PrototypeWindow&,
                               const GridSpec&, const FactorPolicy&,
                               const BuildOptions&);
  friend WarpedBank painless_dual(const WarpedBank&);
  friend WarpedBank design_tight(const WarpingFunction&, const GridSpec&,
                                 std::span<const double>, double);
  friend WarpedBank with_kind(WarpedBank, BankKind);
  friend WarpedBank rebuild_bank(const WarpingFunction&, const PrototypeWindow&,
                                 const GridSpec&, const FactorPolicy&,
                                 std::vector<std::pair<int, int>>,
                                 const BuildOptions&);

  WarpedBank(WarpingFunction warping, PrototypeWindow prototype, GridSpec grid)
      : warping_(std::move(warping)),
        prototype_(std::move(prototype)),
        grid_(grid) {}

  double primal_sum_of_squares(double freq_hz) const;

  WarpingFunction warping_;
  PrototypeWindow prototype_;
  GridSpec grid_;
  FactorPolicy policy_;
  std::vector<Channel> channels_;
  BankKind kind_ = BankKind::Analysis;
  bool allow_holes_ = false;
};

/// Fingerprint of a channel geometry: the ordered (m, coefficient count)
/// pairs. Analysis banks and their duals share it.
std::uint64_t geometry_fingerprint(std::span<const std::pair<int, int>> geometry);

/// Smallest and largest m whose warped support [c + m, d + m) meets F of the
/// warped bins. Throws EmptyBank when no channel qualifies.
ChannelRange channel_range(const WarpingFunction& warp,
                           const PrototypeWindow& window, const GridSpec& grid);

/// a_m = a_tilde / (C v(m)), in seconds.
std::vector<double> natural_factors(const WarpingFunction& warp, double a_tilde,
                                    ChannelRange range);

/// 1 / (F^-1(d) - F^-1(c)): the largest a_tilde whose natural factors stay
/// painless for a window supported on [c, d).
double default_natural_a_tilde(const WarpingFunction& warp,
                               const PrototypeWindow& window);

/// Largest a_m with a_m^-1 >= F^-1(d + m) - F^-1(c + m), in seconds.
std::vector<double> painless_factors(const WarpingFunction& warp, double lo,
                                     double hi, ChannelRange range);

/// Largest divisor of L not exceeding a_real * fs samples, at least 1.
int round_factor_to_grid(double a_real, const GridSpec& grid);
std::vector<int> round_factors_to_grid(std::span<const double> a_real,
                                       const GridSpec& grid);

WarpedBank build_bank(const WarpingFunction& warp, const PrototypeWindow& window,
                      const GridSpec& grid, const FactorPolicy& policy,
                      const BuildOptions& options = {});

/// sum_m (L / a_m) |g_m|^2 at every storage index (length L).
std::vector<double> diagonal_full(const WarpedBank& bank);

/// The frame-operator diagonal over grid().active_bins().
std::vector<double> diagonal(const WarpedBank& bank);

/// Dual responses g_m / diagonal. Throws NotPainless or CoverageError.
WarpedBank painless_dual(const WarpedBank& bank);

/// Normalized cosine-sum window, painless factors, kind Tight.
WarpedBank design_tight(const WarpingFunction& warp, const GridSpec& grid,
                        std::span<const double> coeffs, double R);
WarpedBank design_tight(const WarpingFunction& warp, const GridSpec& grid,
                        CosineFamily family, double R);

/// Same bank with every a_m multiplied by `factor`, rounded down to a divisor
/// of L. Used to leave the painless regime on purpose.
WarpedBank scale_factors(const WarpedBank& bank, int factor);

/// Sets the kind tag of an analysis bank (Analysis or Tight). Dual banks
/// come only from painless_dual.
WarpedBank with_kind(WarpedBank bank, BankKind kind);

/// Regenerates a bank from stored per-channel factors (m, a samples) while
/// recording `policy` as the policy that produced them. Natural and painless
/// policies also recompute the continuous factors.
WarpedBank rebuild_bank(const WarpingFunction& warp, const PrototypeWindow& window,
                        const GridSpec& grid, const FactorPolicy& policy,
                        std::vector<std::pair<int, int>> factors,
                        const BuildOptions& options = {});

}  // namespace warpbank
