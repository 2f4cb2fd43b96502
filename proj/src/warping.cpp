#include "warpbank/warping.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "warpbank/errors.hpp"

namespace warpbank {

namespace {

constexpr int kModeratenessGridPoints = 200;
constexpr double kModeratenessHalfWidth = 20.0;

double sgn(double x) { return x < 0.0 ? -1.0 : 1.0; }

// log w and log v, used for the moderateness search so that steep weights
// (small c) do not overflow.
double log_weight(const WarpingFunction& f, double x) {
  const double c = f.c(), d = f.d(), l = f.l();
  switch (f.family()) {
    case WarpFamily::Log:
      return std::log(d / c) + x / c;
    case WarpFamily::SymPow: {
      const double s = x / (2.0 * c);
      return std::log(d / (2.0 * l * c)) + std::asinh(s) / l -
             0.5 * std::log1p(s * s);
    }
    case WarpFamily::ErbLike:
      return std::log(d / c) + std::abs(x) / c;
    case WarpFamily::SignedPow:
      return std::log(d / (l * c)) + (1.0 / l - 1.0) * std::log1p(std::abs(x) / c);
  }
  return 0.0;
}

double log_v(const WarpingFunction& f, double x) {
  const double c = f.c(), l = f.l();
  switch (f.family()) {
    case WarpFamily::Log:
      return x / c;
    case WarpFamily::SymPow: {
      const double u = std::abs(x) / c;
      return (1.0 + l) / l * std::log(1.0 + u + std::sqrt(u * u + 4.0));
    }
    case WarpFamily::ErbLike:
      return std::abs(x) / c;
    case WarpFamily::SignedPow:
      return (1.0 / l - 1.0) * std::log1p(std::abs(x) / c);
  }
  return 0.0;
}

double max_log_ratio(const WarpingFunction& f, double half_width, int points) {
  double worst = -std::numeric_limits<double>::infinity();
  const double step = 2.0 * half_width / (points - 1);
  for (int i = 0; i < points; ++i) {
    const double x = -half_width + i * step;
    const double lv = log_v(f, x);
    for (int j = 0; j < points; ++j) {
      const double y = -half_width + j * step;
      worst = std::max(worst, log_weight(f, x + y) - lv - log_weight(f, y));
    }
  }
  return worst;
}

}  // namespace

std::string_view to_string(WarpFamily family) {
  switch (family) {
    case WarpFamily::Log: return "log";
    case WarpFamily::SymPow: return "sympow";
    case WarpFamily::ErbLike: return "erb";
    case WarpFamily::SignedPow: return "signedpow";
  }
  return "?";
}

std::string_view to_string(Domain domain) {
  return domain == Domain::FullLine ? "full" : "positive";
}

WarpFamily parse_warp_family(std::string_view name) {
  if (name == "log") return WarpFamily::Log;
  if (name == "sympow") return WarpFamily::SymPow;
  if (name == "erb") return WarpFamily::ErbLike;
  if (name == "signedpow") return WarpFamily::SignedPow;
  throw Error(ErrorCode::InvalidParameter,
              "unknown warping family '" + std::string(name) +
                  "' (expected log, sympow, erb or signedpow)");
}

Domain parse_domain(std::string_view name) {
  if (name == "full") return Domain::FullLine;
  if (name == "positive") return Domain::PositiveHalfLine;
  throw Error(ErrorCode::InvalidParameter,
              "unknown domain '" + std::string(name) + "'");
}

WarpingFunction::WarpingFunction(WarpFamily family, double c, double d, double l)
    : family_(family), c_(c), d_(d), l_(l) {
  if (!(c > 0.0) || !(d > 0.0) || !std::isfinite(c) || !std::isfinite(d)) {
    throw Error(ErrorCode::InvalidParameter,
                "warping parameters must satisfy c > 0 and d > 0");
  }
  const bool uses_l =
      family == WarpFamily::SymPow || family == WarpFamily::SignedPow;
  if (uses_l && !(l > 0.0 && l <= 1.0)) {
    throw Error(ErrorCode::InvalidParameter,
                "warping exponent must satisfy 0 < l <= 1");
  }
  if (!uses_l) l_ = 1.0;
  domain_ = (family == WarpFamily::Log || family == WarpFamily::SymPow)
                ? Domain::PositiveHalfLine
                : Domain::FullLine;
}

WarpingFunction WarpingFunction::make(WarpFamily family, double c, double d,
                                      double l) {
  WarpingFunction f(family, c, d, l);
  if (family == WarpFamily::SymPow) {
    // Only existence of (C, v) is known; pick the smallest power of two that
    // works on the validation grid.
    const double ratio = std::exp(
        max_log_ratio(f, kModeratenessHalfWidth, kModeratenessGridPoints));
    double constant = 1.0;
    while (constant < ratio * (1.0 - 1e-12) && constant < 0x1p60) constant *= 2.0;
    f.constant_ = constant;
  }
  return f;
}

WarpingFunction WarpingFunction::restore(WarpFamily family, double c, double d,
                                         double l, double constant) {
  WarpingFunction f(family, c, d, l);
  if (!(constant >= 1.0) || !std::isfinite(constant)) {
    throw Error(ErrorCode::InvalidParameter,
                "moderateness constant must be finite and >= 1");
  }
  f.constant_ = constant;
  const double ratio = std::exp(
      max_log_ratio(f, kModeratenessHalfWidth, kModeratenessGridPoints));
  if (ratio > constant * (1.0 + 1e-12)) {
    throw Error(ErrorCode::InvalidParameter,
                "stored moderateness constant C is too small for this warping");
  }
  return f;
}

bool WarpingFunction::in_domain(double t) const noexcept {
  if (std::isnan(t)) return false;
  return domain_ == Domain::FullLine || t > 0.0;
}

double WarpingFunction::eval(double t) const {
  if (!in_domain(t)) {
    throw Error(ErrorCode::DomainError,
                "frequency " + std::to_string(t) +
                    " lies outside the positive half-line domain");
  }
  switch (family_) {
    case WarpFamily::Log:
      return c_ * std::log(t / d_);
    case WarpFamily::SymPow: {
      const double u = std::pow(t / d_, l_);
      return c_ * (u - 1.0 / u);
    }
    case WarpFamily::ErbLike:
      return sgn(t) * c_ * std::log1p(std::abs(t) / d_);
    case WarpFamily::SignedPow:
      return sgn(t) * c_ * std::expm1(l_ * std::log1p(std::abs(t) / d_));
  }
  return 0.0;
}

double WarpingFunction::eval_inv(double x) const noexcept {
  switch (family_) {
    case WarpFamily::Log:
      return d_ * std::exp(x / c_);
    case WarpFamily::SymPow:
      return d_ * std::exp(std::asinh(x / (2.0 * c_)) / l_);
    case WarpFamily::ErbLike:
      return sgn(x) * d_ * std::expm1(std::abs(x) / c_);
    case WarpFamily::SignedPow:
      return sgn(x) * d_ * std::expm1(std::log1p(std::abs(x) / c_) / l_);
  }
  return 0.0;
}

double WarpingFunction::eval_deriv(double t) const {
  if (!in_domain(t)) {
    throw Error(ErrorCode::DomainError,
                "frequency " + std::to_string(t) +
                    " lies outside the positive half-line domain");
  }
  switch (family_) {
    case WarpFamily::Log:
      return c_ / t;
    case WarpFamily::SymPow: {
      const double r = t / d_;
      return l_ * c_ / d_ * (std::pow(r, l_ - 1.0) + std::pow(r, -l_ - 1.0));
    }
    case WarpFamily::ErbLike:
      return c_ / (d_ + std::abs(t));
    case WarpFamily::SignedPow:
      return l_ * c_ / d_ * std::pow(std::abs(t) / d_ + 1.0, l_ - 1.0);
  }
  return 0.0;
}

double WarpingFunction::eval_weight(double x) const noexcept {
  switch (family_) {
    case WarpFamily::Log:
      return d_ / c_ * std::exp(x / c_);
    case WarpFamily::SymPow: {
      const double s = x / (2.0 * c_);
      return d_ * std::exp(std::asinh(s) / l_) /
             (2.0 * l_ * c_ * std::sqrt(s * s + 1.0));
    }
    case WarpFamily::ErbLike:
      return d_ / c_ * std::exp(std::abs(x) / c_);
    case WarpFamily::SignedPow:
      return d_ / (l_ * c_) * std::pow(std::abs(x) / c_ + 1.0, 1.0 / l_ - 1.0);
  }
  return 0.0;
}

double WarpingFunction::eval_v(double x) const noexcept {
  return std::exp(log_v(*this, x));
}

bool check_moderate_inequality(const WarpingFunction& warp, double x, double y) {
  if (x < 0.0 || y < 0.0 || !warp.in_domain(y)) {
    throw Error(ErrorCode::InvalidParameter,
                "moderateness check needs x >= 0 and y >= 0 inside the domain");
  }
  const double fy = warp.eval(y);
  const double lhs = fy + warp.eval(x + warp.inv_at_zero());
  const double rhs =
      warp.eval(y + warp.moderateness_constant() * warp.eval_v(fy) * x);
  return lhs <= rhs + 1e-10;
}

double moderateness_ratio(const WarpingFunction& warp, double half_width,
                          int points) {
  if (points < 2 || !(half_width > 0.0)) {
    throw Error(ErrorCode::InvalidParameter, "moderateness grid too small");
  }
  return std::exp(max_log_ratio(warp, half_width, points)) /
         warp.moderateness_constant();
}

}  // namespace warpbank
