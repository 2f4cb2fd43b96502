#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <vector>

#include "oracles.hpp"
#include "warpbank/errors.hpp"
#include "warpbank/prototypes.hpp"

using namespace warpbank;

namespace {

std::pair<double, double> grid_extremes(const PrototypeWindow& w, int points) {
  double lo = INFINITY;
  double hi = -INFINITY;
  for (int i = 0; i < points; ++i) {
    const double s = oracle::grid_sum(w, static_cast<double>(i) / points);
    lo = std::min(lo, s);
    hi = std::max(hi, s);
  }
  return {lo, hi};
}

}  // namespace

TEST_CASE("Hann R=3 squared translates sum to 9/8") {
  const std::vector<double> b{0.5, 0.5};
  const auto w = make_cosine_window(b, 3.0);
  const auto [lo, hi] = grid_extremes(w, 10000);
  CHECK(hi - lo <= 1e-12);
  CHECK(std::abs(lo - 9.0 / 8.0) <= 1e-12);
  CHECK(std::abs(*w.squared_sum_constant() - 9.0 / 8.0) <= 1e-15);
  CHECK(sum_of_squares(w, 0.0) == doctest::Approx(9.0 / 8.0).epsilon(1e-14));
  CHECK(sum_of_squares(w, 0.37) == doctest::Approx(9.0 / 8.0).epsilon(1e-14));
}

TEST_CASE("Blackman-type R=5 squared translates sum to 1.523") {
  const std::vector<double> b{0.42, 0.5, 0.08};
  const auto w = make_cosine_window(b, 5.0);
  const auto [lo, hi] = grid_extremes(w, 10000);
  CHECK(hi - lo <= 1e-12);
  CHECK(std::abs(lo - 1.523) <= 1e-12);
  CHECK(std::abs(*w.squared_sum_constant() - 1.523) <= 1e-12);
}

TEST_CASE("evaluator matches the cosine sum on a half-open support") {
  const std::vector<double> b{0.42, 0.5, 0.08};
  const auto w = make_cosine_window(b, 5.0);
  CHECK(w.support_lo() == -2.5);
  CHECK(w.support_hi() == 2.5);
  for (double t = -3.0; t <= 3.0; t += 0.01) {
    CHECK(w(t) == doctest::Approx(oracle::cosine_sum(b, 5.0, t)).epsilon(1e-14));
  }
  CHECK(w(-2.5) != 0.0);
  CHECK(w(2.5) == 0.0);
}

TEST_CASE("cosine windows need R > 2K") {
  const std::vector<double> hann{0.5, 0.5};
  CHECK_THROWS_AS(make_cosine_window(hann, 2.0), Error);
  CHECK_NOTHROW(make_cosine_window(hann, 2.0001));
  const std::vector<double> blackman{0.42, 0.5, 0.08};
  CHECK_THROWS_AS(make_cosine_window(blackman, 4.0), Error);
  CHECK_THROWS_AS(make_cosine_window(std::vector<double>{}, 3.0), Error);
}

TEST_CASE("R = 2 Hann fails the constant squared sum") {
  // The squared translates of 1/2 + 1/2 cos(pi t) are not constant, which is
  // why the builder refuses this width.
  double lo = INFINITY;
  double hi = -INFINITY;
  for (int i = 0; i < 1000; ++i) {
    const double t = i / 1000.0;
    double s = 0.0;
    for (int m = -3; m <= 3; ++m) {
      const double v = oracle::cosine_sum({0.5, 0.5}, 2.0, t - m);
      s += v * v;
    }
    lo = std::min(lo, s);
    hi = std::max(hi, s);
  }
  CHECK(hi - lo > 0.1);
}

TEST_CASE("constants follow R b0^2 + R/2 sum b_k^2 for integer widths") {
  const std::vector<std::vector<double>> families{
      {0.5, 0.5}, {0.54, 0.46}, {0.42, 0.5, 0.08}, {0.3, 0.2, 0.1, 0.05}};
  for (const auto& b : families) {
    const double K = static_cast<double>(b.size() - 1);
    for (double R : {2 * K + 1, 2 * K + 2, 2 * K + 5, 11.0}) {
      const auto w = make_cosine_window(b, R);
      double expected = R * b[0] * b[0];
      for (std::size_t k = 1; k < b.size(); ++k) expected += R / 2 * b[k] * b[k];
      const auto [lo, hi] = grid_extremes(w, 997);
      CHECK(lo == doctest::Approx(expected).epsilon(1e-12));
      CHECK(hi == doctest::Approx(expected).epsilon(1e-12));
    }
  }
}

TEST_CASE("fractional widths ripple and are not tight-capable") {
  const std::vector<double> b{0.5, 0.5};
  const auto w = make_cosine_window(b, 3.5);
  const auto [lo, hi] = grid_extremes(w, 997);
  CHECK(hi - lo > 1e-3);
  CHECK_FALSE(w.tight_capable());
  CHECK_FALSE(w.squared_sum_constant().has_value());
  CHECK_THROWS_AS(normalize_for_tightness(w), Error);
}

TEST_CASE("named cosine families") {
  CHECK(cosine_family_coefficients(CosineFamily::Hann) == std::vector<double>{0.5, 0.5});
  CHECK(cosine_family_coefficients(CosineFamily::Hamming) == std::vector<double>{0.54, 0.46});
  CHECK(cosine_family_coefficients(CosineFamily::Blackman) ==
        std::vector<double>{0.42, 0.5, 0.08});
  for (auto f : {CosineFamily::Hann, CosineFamily::Hamming, CosineFamily::Blackman}) {
    CHECK(parse_cosine_family(to_string(f)) == f);
  }
  CHECK_THROWS_AS(parse_cosine_family("kaiser"), Error);
}

TEST_CASE("normalization reaches a unit squared sum") {
  const std::vector<double> b{0.5, 0.5};
  const auto w = normalize_for_tightness(make_cosine_window(b, 3.0));
  CHECK(w.normalized());
  CHECK(w.scale() == doctest::Approx(std::sqrt(8.0 / 9.0)).epsilon(1e-15));
  const auto [lo, hi] = grid_extremes(w, 1000);
  CHECK(std::abs(lo - 1.0) <= 1e-12);
  CHECK(std::abs(hi - 1.0) <= 1e-12);
  CHECK(normalize_for_tightness(w) == w);
}

TEST_CASE("degenerate and non-tight windows cannot be normalized") {
  const std::vector<double> zero{0.0, 0.0};
  try {
    (void)normalize_for_tightness(make_cosine_window(zero, 3.0));
    FAIL("expected DegenerateWindow");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DegenerateWindow);
  }
  CHECK_THROWS_AS(normalize_for_tightness(make_bspline_window(2, 1.0)), Error);
}

TEST_CASE("B-splines partition unity but not their squares") {
  for (int order : {2, 3}) {
    const auto w = make_bspline_window(order, 1.0);
    CHECK_FALSE(w.tight_capable());
    CHECK_FALSE(w.squared_sum_constant().has_value());
    double lo = INFINITY;
    double hi = -INFINITY;
    for (int i = 0; i < 200; ++i) {
      const double t = i / 200.0;
      double s = 0.0;
      for (int m = -4; m <= 4; ++m) s += w(t - m);
      CHECK(s == doctest::Approx(1.0).epsilon(1e-12));
      const double sq = oracle::grid_sum(w, t);
      lo = std::min(lo, sq);
      hi = std::max(hi, sq);
    }
    CHECK(hi - lo > 1e-3);
  }
  CHECK(make_bspline_window(2, 1.0)(0.0) == doctest::Approx(1.0));
  CHECK(make_bspline_window(3, 1.0)(0.0) == doctest::Approx(0.75));
  CHECK_THROWS_AS(make_bspline_window(4, 1.0), Error);
}

TEST_CASE("sum over an explicit range and far from every support") {
  const std::vector<double> b{0.5, 0.5};
  const auto w = make_cosine_window(b, 3.0);
  CHECK(sum_of_squares(w, 0.0, 100, 120) == 0.0);
  CHECK(sum_of_squares(w, 0.0, 0, 0) == doctest::Approx(w(0.0) * w(0.0)));
}
