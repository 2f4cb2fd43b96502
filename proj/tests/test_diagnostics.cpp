#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <vector>

#include "oracles.hpp"
#include "warpbank/bank.hpp"
#include "warpbank/diagnostics.hpp"
#include "warpbank/errors.hpp"

using namespace warpbank;

namespace {

const std::vector<double> kHann{0.5, 0.5};

WarpedBank erb_bank(int L, bool normalize) {
  auto w = make_cosine_window(kHann, 3.0);
  if (normalize) w = normalize_for_tightness(w);
  return build_bank(make_warping(WarpFamily::ErbLike, 9.265, 228.8), w,
                    GridSpec{L, 8000, Domain::FullLine}, FactorPolicy::painless());
}

std::vector<WarpedBank> small_banks() {
  const auto w = make_cosine_window(kHann, 3.0);
  std::vector<WarpedBank> out;
  out.push_back(erb_bank(128, false));
  out.push_back(build_bank(make_warping(WarpFamily::Log, 1, 1), w,
                           GridSpec{128, 128, Domain::PositiveHalfLine}, FactorPolicy::painless()));
  out.push_back(build_bank(make_warping(WarpFamily::SignedPow, 1, 1, 0.5), w,
                           GridSpec{128, 200, Domain::FullLine}, FactorPolicy::painless()));
  out.push_back(build_bank(make_warping(WarpFamily::SymPow, 1, 1, 1), w,
                           GridSpec{128, 32, Domain::PositiveHalfLine}, FactorPolicy::painless()));
  return out;
}

bool contains(const std::vector<std::string>& items, const std::string& needle) {
  return std::any_of(items.begin(), items.end(),
                     [&](const std::string& s) { return s.find(needle) != std::string::npos; });
}

}  // namespace

TEST_CASE("diagonal bounds") {
  const auto tight = erb_bank(512, true);
  const auto db = diagonal_bounds(tight);
  CHECK(std::abs(db.lower - 1.0) <= 1e-10);
  CHECK(std::abs(db.upper - 1.0) <= 1e-10);
  const auto raw = diagonal_bounds(erb_bank(512, false));
  CHECK(raw.lower == doctest::Approx(9.0 / 8.0).epsilon(1e-12));
  CHECK(raw.upper == doctest::Approx(9.0 / 8.0).epsilon(1e-12));
  const auto gapped = build_bank(make_warping(WarpFamily::ErbLike, 9.265, 228.8),
                                 make_cosine_window(kHann, 3.0), GridSpec{256, 8000, Domain::FullLine},
                                 FactorPolicy::explicit_list({{-3, 4}, {3, 4}}), BuildOptions{true});
  CHECK(diagonal_bounds(gapped).lower == 0.0);
}

TEST_CASE("sufficient bounds equal the diagonal bounds for painless banks") {
  for (const auto& bank : small_banks()) {
    CAPTURE(to_string(bank.warping().family()));
    REQUIRE(bank.painless());
    const auto db = diagonal_bounds(bank);
    const auto sb = sufficient_bounds(bank);
    CHECK(std::abs(sb.lower - db.lower) <= 1e-10);
    CHECK(std::abs(sb.upper - db.upper) <= 1e-10);
  }
  const auto tight = erb_bank(1024, true);
  const auto sb = sufficient_bounds(tight);
  CHECK(std::abs(sb.lower - 1.0) <= 1e-10);
  CHECK(std::abs(sb.upper - 1.0) <= 1e-10);
}

TEST_CASE("aliasing widens the sufficient bounds and they still sandwich") {
  for (const auto& base : small_banks()) {
    CAPTURE(to_string(base.warping().family()));
    const auto bank = scale_factors(base, 2);
    REQUIRE_FALSE(bank.painless());
    const auto db = diagonal_bounds(bank);
    const auto sb = sufficient_bounds(bank);
    CHECK(sb.lower < db.lower);
    CHECK(sb.upper > db.upper);
    EmpiricalOptions opts;
    opts.tol = 1e-10;
    const auto eb = empirical_bounds(bank, opts);
    CHECK(eb.converged);
    CHECK_FALSE(eb.fast_path);
    CHECK(sb.lower <= eb.lower + 1e-7);
    CHECK(eb.lower <= eb.upper + 1e-7);
    CHECK(eb.upper <= sb.upper + 1e-7);
  }
}

TEST_CASE("empirical bounds match a dense eigensolve at L = 128") {
  for (const auto& base : small_banks()) {
    for (int factor : {1, 2}) {
      CAPTURE(to_string(base.warping().family()));
      CAPTURE(factor);
      const auto bank = factor == 1 ? base : scale_factors(base, factor);
      EmpiricalOptions opts;
      opts.tol = 1e-10;
      opts.allow_fast_path = false;
      const auto eb = empirical_bounds(bank, opts);
      const auto [lo, hi] = oracle::dense_frame_bounds(bank);
      CHECK(eb.converged);
      CHECK(std::abs(eb.lower - lo) <= 1e-7);
      CHECK(std::abs(eb.upper - hi) <= 1e-7);
    }
  }
}

TEST_CASE("fast path agrees with power iteration") {
  const auto bank = erb_bank(512, false);
  const auto fast = empirical_bounds(bank);
  CHECK(fast.fast_path);
  EmpiricalOptions opts;
  opts.allow_fast_path = false;
  opts.tol = 1e-10;
  const auto slow = empirical_bounds(bank, opts);
  CHECK_FALSE(slow.fast_path);
  CHECK(slow.lower == doctest::Approx(fast.lower).epsilon(1e-7));
  CHECK(slow.upper == doctest::Approx(fast.upper).epsilon(1e-7));
  const auto db = diagonal_bounds(bank);
  CHECK(fast.lower == db.lower);
  CHECK(fast.upper == db.upper);
}

TEST_CASE("power iteration on a known diagonal operator") {
  const std::vector<double> diag{0.5, 3.0, 2.0, 1.0};
  const LinearOperator op = [&](std::span<const cplx> x) {
    std::vector<cplx> y(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) y[i] = diag[i] * x[i];
    return y;
  };
  const auto r = power_iteration(op, {1.0, 1.0, 1.0, 1.0}, 1e-12, 10000);
  CHECK(r.converged);
  CHECK(r.eigenvalue == doctest::Approx(3.0).epsilon(1e-10));
  const auto capped = power_iteration(op, {1.0, 1.0, 1.0, 1.0}, 1e-14, 2);
  CHECK_FALSE(capped.converged);
  CHECK(capped.iterations == 2);
}

TEST_CASE("decay check") {
  const auto sp = make_warping(WarpFamily::SignedPow, 1, 1, 1);
  const auto hann = make_cosine_window(kHann, 3.0);
  CHECK(decay_check(hann, sp, 0.5).verdict == DecayVerdict::CompactSupport);
  const auto fast = decay_check([](double t) { return std::pow(1 + std::abs(t), -2.0); }, sp, 0.5);
  CHECK(fast.verdict == DecayVerdict::Satisfied);
  CHECK(fast.linear_exponent == doctest::Approx(2.0).epsilon(1e-2));
  const auto slow = decay_check([](double t) { return 1.0 / (1 + std::abs(t)); }, sp, 0.5);
  CHECK(slow.verdict == DecayVerdict::Violated);
  CHECK_FALSE(slow.summary.empty());
  CHECK(to_string(DecayVerdict::Violated) != to_string(DecayVerdict::Satisfied));
}

TEST_CASE("frame report for a tight bank") {
  const auto bank = erb_bank(1024, true);
  const auto r = frame_report(bank);
  CHECK(r.painless);
  CHECK(r.suff_conclusive);
  CHECK(r.emp_converged);
  CHECK(r.tightness_ratio - 1.0 <= 1e-8);
  CHECK(r.tightness_ratio >= 1.0);
  CHECK(r.warnings.empty());
  CHECK(r.channel_painless.size() == bank.channels().size());
}

TEST_CASE("frame report warnings") {
  const auto gapped = build_bank(make_warping(WarpFamily::ErbLike, 9.265, 228.8),
                                 make_cosine_window(kHann, 3.0), GridSpec{256, 8000, Domain::FullLine},
                                 FactorPolicy::explicit_list({{-3, 4}, {3, 4}}), BuildOptions{true});
  const auto r = frame_report(gapped);
  CHECK(contains(r.warnings, "coverage"));
  CHECK(std::isinf(r.tightness_ratio));

  const auto aliased = scale_factors(erb_bank(256, false), 8);
  CHECK(contains(frame_report(aliased).warnings, "painless"));

  const auto sym = small_banks()[3];
  CHECK(contains(frame_report(sym).warnings, "grid search"));
}

TEST_CASE("tightness ratio helper") {
  CHECK(tightness_ratio(2.0, 3.0) == 1.5);
  CHECK(std::isinf(tightness_ratio(0.0, 1.0)));
  CHECK(std::isinf(tightness_ratio(-1.0, 1.0)));
}

TEST_CASE("scaling sweep degrades monotonically") {
  for (const auto& base : small_banks()) {
    CAPTURE(to_string(base.warping().family()));
    const std::vector<int> factors{1, 2, 4, 8};
    const auto rows = scaling_sweep(base, factors);
    REQUIRE(rows.size() == factors.size());
    CHECK(rows[0].painless);
    for (std::size_t i = 1; i < rows.size(); ++i) {
      CHECK(rows[i].factor == factors[i]);
      CHECK(rows[i].tightness_ratio >= rows[i - 1].tightness_ratio * (1 - 1e-9));
    }
  }
}
