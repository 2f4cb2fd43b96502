#pragma once

#include <string>
#include <string_view>

namespace warpbank {

enum class Domain { FullLine, PositiveHalfLine };

enum class WarpFamily {
  Log,        // c log(t/d) on the positive half-line
  SymPow,     // c((t/d)^l - (t/d)^-l) on the positive half-line
  ErbLike,    // sgn(t) c log(1 + |t|/d)
  SignedPow,  // sgn(t) c((|t|/d + 1)^l - 1)
};

std::string_view to_string(WarpFamily family);
std::string_view to_string(Domain domain);
WarpFamily parse_warp_family(std::string_view name);
Domain parse_domain(std::string_view name);

/// A frequency scale F: D -> R together with its inverse, derivative,
/// weight w = (F^-1)' and a submultiplicative weight v such that
/// w(x + y) <= C v(x) w(y).
///
/// All evaluators are closed form. Values are immutable after construction.
class WarpingFunction {
 public:
  /// Builds one of the built-in families. `l` is ignored by Log and ErbLike.
  /// Throws Error(InvalidParameter) for c <= 0, d <= 0 or l outside (0, 1].
  static WarpingFunction make(WarpFamily family, double c, double d,
                              double l = 1.0);

  /// Rebuilds a stored warping with a known constant C. The constant is
  /// re-validated on the moderateness grid.
  static WarpingFunction restore(WarpFamily family, double c, double d,
                                 double l, double constant);

  WarpFamily family() const noexcept { return family_; }
  Domain domain() const noexcept { return domain_; }
  double c() const noexcept { return c_; }
  double d() const noexcept { return d_; }
  double l() const noexcept { return l_; }
  double moderateness_constant() const noexcept { return constant_; }

  /// True when C was found by grid search rather than given in closed form.
  bool constant_is_searched() const noexcept {
    return family_ == WarpFamily::SymPow;
  }

  bool in_domain(double t) const noexcept;

  double eval(double t) const;
  double eval_inv(double x) const noexcept;
  double eval_deriv(double t) const;
  double eval_weight(double x) const noexcept;
  double eval_v(double x) const noexcept;

  /// Lower end of the domain mapped through F^-1 at 0, i.e. F^-1(0).
  double inv_at_zero() const noexcept { return eval_inv(0.0); }

  bool operator==(const WarpingFunction&) const = default;

 private:
  WarpingFunction(WarpFamily family, double c, double d, double l);

  WarpFamily family_;
  Domain domain_;
  double c_;
  double d_;
  double l_;
  double constant_ = 1.0;
};

inline WarpingFunction make_warping(WarpFamily family, double c, double d,
                                    double l = 1.0) {
  return WarpingFunction::make(family, c, d, l);
}

/// Checks F(y) + F(x + F^-1(0)) <= F(y + C v(F(y)) x) for x, y >= 0 with y
/// in the domain, up to an additive 1e-10. A false result means (C, v) do not
/// describe the weight correctly.
bool check_moderate_inequality(const WarpingFunction& warp, double x, double y);

/// Largest violation ratio w(x+y) / (C v(x) w(y)) over a square grid of
/// `points` x `points` samples on [-half_width, half_width]^2. Values <= 1
/// mean the moderateness inequality holds on the grid.
double moderateness_ratio(const WarpingFunction& warp, double half_width,
                          int points);

}  // namespace warpbank
