#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <vector>

#include "warpbank/errors.hpp"
#include "warpbank/warping.hpp"

using namespace warpbank;

namespace {

std::vector<WarpingFunction> catalog() {
  return {make_warping(WarpFamily::Log, 1, 1),
          make_warping(WarpFamily::Log, 2.5, 40),
          make_warping(WarpFamily::SymPow, 1, 1, 1),
          make_warping(WarpFamily::SymPow, 1, 1, 0.5),
          make_warping(WarpFamily::SymPow, 3, 100, 0.8),
          make_warping(WarpFamily::ErbLike, 9.265, 228.8),
          make_warping(WarpFamily::ErbLike, 1, 1),
          make_warping(WarpFamily::SignedPow, 1, 1, 0.5),
          make_warping(WarpFamily::SignedPow, 2, 50, 0.8),
          make_warping(WarpFamily::SignedPow, 1, 1, 1)};
}

std::vector<double> sample_points(const WarpingFunction& w) {
  std::vector<double> ts;
  for (int i = -60; i <= 60; ++i) {
    const double t = std::copysign(std::pow(10.0, std::abs(i) / 10.0 - 2.0), i);
    if (i == 0) continue;
    if (w.in_domain(t)) ts.push_back(t);
  }
  return ts;
}

}  // namespace

TEST_CASE("families map to their domains") {
  CHECK(make_warping(WarpFamily::Log, 1, 1).domain() == Domain::PositiveHalfLine);
  CHECK(make_warping(WarpFamily::SymPow, 1, 1, 0.5).domain() == Domain::PositiveHalfLine);
  CHECK(make_warping(WarpFamily::ErbLike, 1, 1).domain() == Domain::FullLine);
  CHECK(make_warping(WarpFamily::SignedPow, 1, 1, 0.5).domain() == Domain::FullLine);
}

TEST_CASE("invalid parameters are rejected") {
  CHECK_THROWS_AS(make_warping(WarpFamily::Log, 0, 1), Error);
  CHECK_THROWS_AS(make_warping(WarpFamily::Log, 1, -1), Error);
  CHECK_THROWS_AS(make_warping(WarpFamily::SymPow, 1, 1, 0), Error);
  CHECK_THROWS_AS(make_warping(WarpFamily::SignedPow, 1, 1, 1.5), Error);
  CHECK_THROWS_AS(make_warping(WarpFamily::ErbLike, std::nan(""), 1), Error);
  try {
    make_warping(WarpFamily::Log, -1, 1);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InvalidParameter);
  }
}

TEST_CASE("names parse both ways") {
  for (auto f : {WarpFamily::Log, WarpFamily::SymPow, WarpFamily::ErbLike, WarpFamily::SignedPow}) {
    CHECK(parse_warp_family(to_string(f)) == f);
  }
  CHECK(parse_domain(to_string(Domain::FullLine)) == Domain::FullLine);
  CHECK_THROWS_AS(parse_warp_family("mel"), Error);
}

TEST_CASE("fixed points of the closed forms") {
  CHECK(make_warping(WarpFamily::Log, 1, 1).eval(1.0) == 0.0);
  CHECK(make_warping(WarpFamily::SymPow, 1, 1, 0.5).eval(1.0) == doctest::Approx(0.0));
  CHECK(make_warping(WarpFamily::Log, 1, 1).eval_weight(0.0) == doctest::Approx(1.0));

  const auto erb = make_warping(WarpFamily::ErbLike, 9.265, 228.8);
  const long double expected = 9.265L * std::log(2.0L);
  CHECK(std::abs(erb.eval(228.8) - static_cast<double>(expected)) < 1e-13);
  CHECK(erb.eval(228.8) == doctest::Approx(6.4223).epsilon(1e-4));

  const auto sp = make_warping(WarpFamily::SignedPow, 1, 1, 0.5);
  CHECK(std::abs(sp.eval_inv(1.5) - 5.25) < 1e-12);
  CHECK(std::abs(sp.eval(5.25) - 1.5) < 1e-12);
}

TEST_CASE("log family has exact weights") {
  const auto w = make_warping(WarpFamily::Log, 1, 1);
  for (double x : {-3.0, -0.5, 0.0, 1.0, 4.0}) {
    CHECK(w.eval_weight(x) == doctest::Approx(std::exp(x)).epsilon(1e-14));
    CHECK(w.eval_v(x) == doctest::Approx(std::exp(x)).epsilon(1e-14));
  }
  CHECK(w.moderateness_constant() == 1.0);
}

TEST_CASE("positive half-line families reject nonpositive frequencies") {
  const auto w = make_warping(WarpFamily::Log, 1, 1);
  CHECK_FALSE(w.in_domain(0.0));
  try {
    (void)w.eval(-1.0);
    FAIL("expected DomainError");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DomainError);
  }
  CHECK_THROWS_AS((void)w.eval_deriv(0.0), Error);
}

TEST_CASE("round trip, monotonicity and oddness") {
  for (const auto& w : catalog()) {
    CAPTURE(to_string(w.family()));
    const auto ts = sample_points(w);
    double previous = -INFINITY;
    for (double t : ts) {
      const double x = w.eval(t);
      CHECK(x > previous);
      previous = x;
      CHECK(std::abs(w.eval_inv(x) - t) <= 1e-11 * std::max(1.0, std::abs(t)));
      if (w.domain() == Domain::FullLine) CHECK(w.eval(-t) == doctest::Approx(-x).epsilon(1e-14));
    }
  }
}

TEST_CASE("derivative and weight agree with finite differences") {
  for (const auto& w : catalog()) {
    CAPTURE(to_string(w.family()));
    for (double t : sample_points(w)) {
      const double h = 1e-6 * std::max(1.0, std::abs(t));
      if (!w.in_domain(t - h)) continue;
      const double fd = (w.eval(t + h) - w.eval(t - h)) / (2 * h);
      CHECK(w.eval_deriv(t) == doctest::Approx(fd).epsilon(1e-5));
      // w = (F^-1)' = 1 / F'(F^-1(x)).
      const double x = w.eval(t);
      CHECK(w.eval_weight(x) == doctest::Approx(1.0 / w.eval_deriv(t)).epsilon(1e-10));
    }
  }
}

TEST_CASE("weights are moderate on a grid") {
  for (const auto& w : catalog()) {
    CAPTURE(to_string(w.family()));
    CHECK(w.moderateness_constant() >= 1.0);
    CHECK(moderateness_ratio(w, 20.0, 200) <= 1.0 + 1e-12);
  }
}

TEST_CASE("v is submultiplicative") {
  for (const auto& w : catalog()) {
    CAPTURE(to_string(w.family()));
    for (double x = -15; x <= 15; x += 0.75) {
      for (double y = -15; y <= 15; y += 0.75) {
        CHECK(w.eval_v(x + y) <= w.eval_v(x) * w.eval_v(y) * (1 + 1e-12));
      }
    }
  }
}

TEST_CASE("Lemma-style inequality sweep") {
  const auto log = make_warping(WarpFamily::Log, 1, 1);
  const auto erb = make_warping(WarpFamily::ErbLike, 9.265, 228.8);
  const auto sp = make_warping(WarpFamily::SignedPow, 1, 1, 0.5);
  const auto sym = make_warping(WarpFamily::SymPow, 1, 1, 0.5);
  int checked = 0;
  for (double x = 0.0; x <= 10.0; x += 0.25) {
    for (double y = 0.0; y <= 10.0; y += 0.25) {
      CHECK(check_moderate_inequality(erb, x, y));
      CHECK(check_moderate_inequality(sp, x, y));
      if (y > 0.0) {
        CHECK(check_moderate_inequality(log, x, y));
        CHECK(check_moderate_inequality(sym, x, y));
      }
      ++checked;
    }
  }
  CHECK(checked == 41 * 41);
  CHECK_THROWS_AS(check_moderate_inequality(erb, -1.0, 1.0), Error);
  CHECK_THROWS_AS(check_moderate_inequality(log, 1.0, 0.0), Error);
}

TEST_CASE("log family meets the inequality with equality") {
  const auto log = make_warping(WarpFamily::Log, 1, 1);
  for (double x : {0.0, 0.5, 3.0}) {
    for (double y : {0.2, 1.0, 7.0}) {
      const double lhs = log.eval(y) + log.eval(x + log.inv_at_zero());
      const double rhs = log.eval(y + log.eval_v(log.eval(y)) * x);
      CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
    }
  }
}

TEST_CASE("restore validates the stored constant") {
  const auto sym = make_warping(WarpFamily::SymPow, 1, 1, 0.5);
  const auto back = WarpingFunction::restore(WarpFamily::SymPow, 1, 1, 0.5,
                                             sym.moderateness_constant());
  CHECK(back == sym);
  CHECK(sym.constant_is_searched());
  CHECK_THROWS_AS(WarpingFunction::restore(WarpFamily::SymPow, 1, 1, 0.5, 1e-3), Error);
}
