#pragma once

#include <cmath>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace warpbank {

enum class WindowKind { CosineSum, BSpline };

/// Prototype window theta on the warped frequency axis.
///
/// CosineSum: theta(t) = s * sum_k b_k cos(2 pi k t / R) on [-R/2, R/2).
/// BSpline:   theta(t) = s * B_order(t / R), the centred cardinal B-spline,
///            supported on [-order R/2, order R/2).
/// `s` is the normalization scale (1 unless normalize_for_tightness ran).
class PrototypeWindow {
 public:
  WindowKind kind() const noexcept { return kind_; }
  const std::vector<double>& coefficients() const noexcept { return coeffs_; }
  int order() const noexcept { return order_; }
  double stretch() const noexcept { return stretch_; }
  double scale() const noexcept { return scale_; }
  bool normalized() const noexcept { return normalized_; }

  /// Half-open support [lo, hi).
  double support_lo() const noexcept { return lo_; }
  double support_hi() const noexcept { return hi_; }

  /// Closed-form constant of sum_m |theta(t - m)|^2 for cosine sums with
  /// integer R (R b0^2 + R/2 sum_{k>=1} b_k^2, times scale^2). Empty for
  /// B-splines and fractional R, whose squared sums ripple.
  std::optional<double> squared_sum_constant() const;

  bool tight_capable() const noexcept {
    return kind_ == WindowKind::CosineSum && stretch_ == std::floor(stretch_);
  }

  double operator()(double t) const noexcept;

  bool operator==(const PrototypeWindow&) const = default;

 private:
  friend PrototypeWindow make_cosine_window(std::span<const double>, double);
  friend PrototypeWindow make_bspline_window(int, double);
  friend PrototypeWindow normalize_for_tightness(const PrototypeWindow&);

  WindowKind kind_ = WindowKind::CosineSum;
  std::vector<double> coeffs_;
  int order_ = 0;
  double stretch_ = 1.0;
  double scale_ = 1.0;
  bool normalized_ = false;
  double lo_ = 0.0;
  double hi_ = 0.0;
};

/// Requires R > 2K where K = coeffs.size() - 1; throws InvalidParameter
/// otherwise.
PrototypeWindow make_cosine_window(std::span<const double> coeffs, double R);

/// Cardinal B-spline of order 2 (hat) or 3 (quadratic) with integer stretch.
/// Its integer translates sum to a constant, their squares do not.
PrototypeWindow make_bspline_window(int order, double R);

enum class CosineFamily { Hann, Hamming, Blackman };

std::vector<double> cosine_family_coefficients(CosineFamily family);
std::string_view to_string(CosineFamily family);
CosineFamily parse_cosine_family(std::string_view name);

/// sum_{m = m_lo}^{m_hi} |theta(t - m)|^2.
double sum_of_squares(const PrototypeWindow& window, double t, int m_lo, int m_hi);

/// Same sum over every translate that can be nonzero at t.
double sum_of_squares(const PrototypeWindow& window, double t);

/// theta / sqrt(C_t). Throws DegenerateWindow when C_t == 0 and
/// InvalidParameter for windows without a constant squared sum.
PrototypeWindow normalize_for_tightness(const PrototypeWindow& window);

}  // namespace warpbank
