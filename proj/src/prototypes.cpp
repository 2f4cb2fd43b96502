#include "warpbank/prototypes.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "warpbank/errors.hpp"

namespace warpbank {

PrototypeWindow make_cosine_window(std::span<const double> coeffs, double R) {
  if (coeffs.empty()) {
    throw Error(ErrorCode::InvalidParameter,
                "cosine-sum window needs at least one coefficient");
  }
  const auto K = static_cast<double>(coeffs.size() - 1);
  if (!std::isfinite(R) || !(R > 2.0 * K)) {
    throw Error(ErrorCode::InvalidParameter,
                "cosine-sum window with K = " + std::to_string(coeffs.size() - 1) +
                    " needs stretch R > 2K for constant squared translates");
  }
  PrototypeWindow w;
  w.kind_ = WindowKind::CosineSum;
  w.coeffs_.assign(coeffs.begin(), coeffs.end());
  w.stretch_ = R;
  w.lo_ = -R / 2.0;
  w.hi_ = R / 2.0;
  return w;
}

PrototypeWindow make_bspline_window(int order, double R) {
  if (order != 2 && order != 3) {
    throw Error(ErrorCode::InvalidParameter, "B-spline order must be 2 or 3");
  }
  if (!std::isfinite(R) || !(R > 0.0)) {
    throw Error(ErrorCode::InvalidParameter, "B-spline stretch must be positive");
  }
  PrototypeWindow w;
  w.kind_ = WindowKind::BSpline;
  w.order_ = order;
  w.stretch_ = R;
  w.lo_ = -order * R / 2.0;
  w.hi_ = order * R / 2.0;
  return w;
}

std::optional<double> PrototypeWindow::squared_sum_constant() const {
  if (!tight_capable()) return std::nullopt;
  double tail = 0.0;
  for (std::size_t k = 1; k < coeffs_.size(); ++k) tail += coeffs_[k] * coeffs_[k];
  const double base = stretch_ * coeffs_[0] * coeffs_[0] + stretch_ / 2.0 * tail;
  return scale_ * scale_ * base;
}

double PrototypeWindow::operator()(double t) const noexcept {
  if (!(t >= lo_ && t < hi_)) return 0.0;
  if (kind_ == WindowKind::CosineSum) {
    const double phase = 2.0 * std::numbers::pi * t / stretch_;
    double acc = 0.0;
    for (std::size_t k = 0; k < coeffs_.size(); ++k) {
      acc += coeffs_[k] * std::cos(static_cast<double>(k) * phase);
    }
    return scale_ * acc;
  }
  const double x = std::abs(t / stretch_);
  if (order_ == 2) return scale_ * (1.0 - x);
  if (x < 0.5) return scale_ * (0.75 - x * x);
  const double r = 1.5 - x;
  return scale_ * 0.5 * r * r;
}

std::vector<double> cosine_family_coefficients(CosineFamily family) {
  switch (family) {
    case CosineFamily::Hann: return {0.5, 0.5};
    case CosineFamily::Hamming: return {0.54, 0.46};
    case CosineFamily::Blackman: return {0.42, 0.5, 0.08};
  }
  return {};
}

std::string_view to_string(CosineFamily family) {
  switch (family) {
    case CosineFamily::Hann: return "hann";
    case CosineFamily::Hamming: return "hamming";
    case CosineFamily::Blackman: return "blackman";
  }
  return "?";
}

CosineFamily parse_cosine_family(std::string_view name) {
  if (name == "hann") return CosineFamily::Hann;
  if (name == "hamming") return CosineFamily::Hamming;
  if (name == "blackman") return CosineFamily::Blackman;
  throw Error(ErrorCode::InvalidParameter,
              "unknown window '" + std::string(name) + "'");
}

double sum_of_squares(const PrototypeWindow& window, double t, int m_lo, int m_hi) {
  double acc = 0.0;
  for (int m = m_lo; m <= m_hi; ++m) {
    const double v = window(t - m);
    acc += v * v;
  }
  return acc;
}

double sum_of_squares(const PrototypeWindow& window, double t) {
  // theta(t - m) != 0 needs lo <= t - m < hi.
  const int m_lo = static_cast<int>(std::floor(t - window.support_hi()));
  const int m_hi = static_cast<int>(std::ceil(t - window.support_lo()));
  return sum_of_squares(window, t, m_lo, m_hi);
}

PrototypeWindow normalize_for_tightness(const PrototypeWindow& window) {
  const auto constant = window.squared_sum_constant();
  if (!constant) {
    throw Error(ErrorCode::InvalidParameter,
                "only cosine-sum windows with integer R have constant squared translates");
  }
  if (!(*constant > 0.0)) {
    throw Error(ErrorCode::DegenerateWindow,
                "window has zero squared-sum constant and cannot be normalized");
  }
  PrototypeWindow out = window;
  if (window.normalized_) return out;
  out.scale_ = window.scale_ / std::sqrt(*constant);
  out.normalized_ = true;
  return out;
}

}  // namespace warpbank
