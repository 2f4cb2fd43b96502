#include "warpbank/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "warpbank/errors.hpp"
#include "warpbank/transform.hpp"

namespace warpbank {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double norm2(std::span<const cplx> v) {
  double acc = 0.0;
  for (const auto& x : v) acc += std::norm(x);
  return std::sqrt(acc);
}

struct AliasSums {
  double diag = 0.0;
  double cross = 0.0;
};

// sum over channels of theta_m(t)^2 and of sum_{k != 0} |theta_m(t) theta_m(s_k)|
// with s_k = t - k fs / a_m wrapped into the sampled band.
AliasSums alias_sums(const WarpedBank& bank, double t) {
  AliasSums out;
  const GridSpec& grid = bank.grid();
  const double fs = grid.sample_rate;
  const WarpingFunction& warp = bank.warping();
  const PrototypeWindow& window = bank.prototype();

  for (const auto& ch : bank.channels()) {
    if (ch.kind != ChannelKind::Warped && t == ch.center_hz) out.diag += 1.0;
  }
  const ChannelRange range = bank.candidate_channels(t);
  for (int m = range.m_min; m <= range.m_max; ++m) {
    const Channel* ch = bank.find_channel(m);
    if (ch == nullptr) continue;
    const double vt = bank.channel_value(*ch, t);
    if (vt == 0.0) continue;
    out.diag += vt * vt;
    if (ch->a == 1) continue;

    const double step = fs / ch->a;
    const double lo = warp.eval_inv(m + window.support_lo()) - step;
    const double hi = warp.eval_inv(m + window.support_hi()) + step;
    // t - s lies in (-fs, fs); s = t - q step + p fs with q in [1, a - 1].
    for (int p = 0; p <= 1; ++p) {
      const double shifted = t + p * fs;
      const double q_lo = std::max(1.0, std::ceil((shifted - hi) / step));
      const double q_hi = std::min(static_cast<double>(ch->a - 1),
                                   std::floor((shifted - lo) / step));
      for (double q = q_lo; q <= q_hi; q += 1.0) {
        const double s = shifted - q * step;
        out.cross += std::abs(vt * bank.channel_value(*ch, s));
      }
    }
  }
  return out;
}

std::vector<cplx> random_active_vector(const GridSpec& grid, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  std::vector<cplx> v(static_cast<std::size_t>(grid.length), cplx{});
  for (std::size_t j : grid.active_bins()) v[j] = {normal(rng), normal(rng)};
  return v;
}

// Decay exponent p of |f| ~ (1 + |x|)^-p from the last decade of samples.
double tail_exponent(const std::vector<double>& x, const std::vector<double>& f) {
  double worst = kInf;
  for (std::size_t i = 1; i < x.size(); ++i) {
    if (f[i] == 0.0) continue;
    if (f[i - 1] == 0.0) return 0.0;
    const double dx = std::log1p(std::abs(x[i])) - std::log1p(std::abs(x[i - 1]));
    if (!(dx > 0.0)) continue;
    const double p = -(std::log(f[i]) - std::log(f[i - 1])) / dx;
    worst = std::min(worst, p);
  }
  return worst;
}

}  // namespace

double tightness_ratio(double lower, double upper) {
  return lower > 0.0 ? upper / lower : kInf;
}

BoundPair diagonal_bounds(const WarpedBank& bank) {
  const auto diag = diagonal(bank);
  const auto [lo, hi] = std::minmax_element(diag.begin(), diag.end());
  return {*lo, *hi};
}

BoundPair sufficient_bounds(const WarpedBank& bank, int oversample) {
  if (oversample < 1) {
    throw Error(ErrorCode::InvalidParameter, "oversampling factor must be >= 1");
  }
  const GridSpec& grid = bank.grid();
  BoundPair out{kInf, -kInf};
  auto visit = [&](double t) {
    const AliasSums s = alias_sums(bank, t);
    out.lower = std::min(out.lower, s.diag - s.cross);
    out.upper = std::max(out.upper, s.diag + s.cross);
  };
  const int k_first = grid.first_warped_bin();
  const int k_last = grid.last_warped_bin();
  for (int k = k_first; k <= k_last; ++k) {
    const int steps = k == k_last ? 1 : oversample;
    for (int s = 0; s < steps; ++s) {
      visit((k + static_cast<double>(s) / oversample) * grid.sample_rate / grid.length);
    }
  }
  if (grid.has_residual_channels()) {
    visit(0.0);
    visit(grid.sample_rate / 2.0);
  }
  return out;
}

PowerIterationResult power_iteration(const LinearOperator& op,
                                     std::vector<cplx> start, double tol,
                                     int max_iter, double scale) {
  PowerIterationResult out;
  const double n0 = norm2(start);
  if (!(n0 > 0.0)) {
    throw Error(ErrorCode::InvalidParameter, "power iteration needs a nonzero start");
  }
  for (auto& v : start) v /= n0;
  std::vector<cplx> x = std::move(start);
  for (int it = 1; it <= max_iter; ++it) {
    const std::vector<cplx> y = op(x);
    cplx rho{};
    for (std::size_t i = 0; i < x.size(); ++i) rho += std::conj(x[i]) * y[i];
    out.eigenvalue = rho.real();
    double r2 = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) r2 += std::norm(y[i] - out.eigenvalue * x[i]);
    out.residual = std::sqrt(r2);
    out.iterations = it;
    const double ref = scale > 0.0 ? scale : std::abs(out.eigenvalue);
    const double ny = norm2(y);
    if (out.residual <= tol * ref || !(ny > 0.0)) {
      out.converged = true;
      out.eigenvector = std::move(x);
      return out;
    }
    x = y;
    for (auto& v : x) v /= ny;
  }
  out.eigenvector = std::move(x);
  return out;
}

EmpiricalBounds empirical_bounds(const WarpedBank& bank, const EmpiricalOptions& options) {
  EmpiricalBounds out;
  if (options.allow_fast_path && bank.painless()) {
    const BoundPair d = diagonal_bounds(bank);
    out.lower = d.lower;
    out.upper = d.upper;
    out.fast_path = true;
    return out;
  }
  const LinearOperator frame_op = [&bank](std::span<const cplx> x) {
    return apply_frame_operator_spectrum(x, bank);
  };
  const auto top = power_iteration(frame_op, random_active_vector(bank.grid(), options.seed),
                                   options.tol, options.max_iter);
  out.upper = top.eigenvalue;

  const double shift = out.upper;
  const LinearOperator shifted_op = [&bank, shift](std::span<const cplx> x) {
    auto y = apply_frame_operator_spectrum(x, bank);
    for (std::size_t i = 0; i < y.size(); ++i) y[i] = shift * x[i] - y[i];
    return y;
  };
  const auto bottom =
      power_iteration(shifted_op, random_active_vector(bank.grid(), options.seed + 1),
                      options.tol, options.max_iter, shift);
  out.lower = shift - bottom.eigenvalue;
  out.converged = top.converged && bottom.converged;
  out.iterations = top.iterations + bottom.iterations;
  return out;
}

std::string_view to_string(DecayVerdict verdict) {
  switch (verdict) {
    case DecayVerdict::CompactSupport: return "satisfied: compact support";
    case DecayVerdict::Satisfied: return "satisfied";
    case DecayVerdict::Violated: return "violated";
  }
  return "?";
}

DecayReport decay_check(const PrototypeWindow& window, const WarpingFunction& warp,
                        double eps) {
  if (!(eps > 0.0)) throw Error(ErrorCode::InvalidParameter, "eps must be positive");
  (void)warp;
  DecayReport out;
  out.required_exponent = 1.0 + eps;
  out.linear_exponent = kInf;
  out.warped_exponent = kInf;
  out.verdict = DecayVerdict::CompactSupport;
  std::ostringstream msg;
  msg << "satisfied: compact support [" << window.support_lo() << ", "
      << window.support_hi() << ")";
  out.summary = msg.str();
  return out;
}

DecayReport decay_check(const std::function<double(double)>& probe,
                        const WarpingFunction& warp, double eps) {
  if (!(eps > 0.0)) throw Error(ErrorCode::InvalidParameter, "eps must be positive");
  DecayReport out;
  out.required_exponent = 1.0 + eps;

  // Last decade of a log-spaced grid, both tails.
  std::vector<double> ts;
  for (int i = 0; i <= 20; ++i) ts.push_back(std::pow(10.0, 5.0 + i / 20.0));
  double linear = kInf;
  for (double sign : {1.0, -1.0}) {
    std::vector<double> x, f;
    for (double t : ts) {
      x.push_back(t);
      f.push_back(std::abs(probe(sign * t)));
    }
    linear = std::min(linear, tail_exponent(x, f));
  }

  // Warped tails: points t = F(x) with |x| over a decade where F^-1 grows.
  double warped = kInf;
  const std::vector<double> signs = warp.domain() == Domain::FullLine
                                        ? std::vector<double>{1.0, -1.0}
                                        : std::vector<double>{1.0};
  for (double sign : signs) {
    std::vector<double> x, f;
    for (int i = 0; i <= 20; ++i) {
      const double xi = sign * std::pow(10.0, 5.0 + i / 20.0);
      x.push_back(xi);
      f.push_back(std::abs(probe(warp.eval(xi))));
    }
    warped = std::min(warped, tail_exponent(x, f));
  }
  out.linear_exponent = linear;
  out.warped_exponent = warped;
  const double slack = 1e-6;
  const bool ok = linear >= out.required_exponent - slack &&
                  warped >= out.required_exponent - slack;
  out.verdict = ok ? DecayVerdict::Satisfied : DecayVerdict::Violated;
  std::ostringstream msg;
  msg << to_string(out.verdict) << ": decay exponent " << linear << " in |t|, "
      << warped << " in |F^-1(t)|, need " << out.required_exponent;
  out.summary = msg.str();
  return out;
}

FrameReport frame_report(const WarpedBank& bank, const ReportOptions& options) {
  FrameReport r;
  const BoundPair d = diagonal_bounds(bank);
  r.diag_inf = d.lower;
  r.diag_sup = d.upper;
  const BoundPair s = sufficient_bounds(bank, options.oversample);
  r.suff_lower = s.lower;
  r.suff_upper = s.upper;
  r.suff_conclusive = s.lower > 0.0;
  const EmpiricalBounds e = empirical_bounds(bank, options.empirical);
  r.emp_lower = e.lower;
  r.emp_upper = e.upper;
  r.emp_converged = e.converged;
  r.tightness_ratio = tightness_ratio(e.lower, e.upper);
  r.painless = bank.painless();
  for (const auto& ch : bank.channels()) {
    r.channel_painless.emplace_back(ch.m, ch.painless(bank.signal_length()));
  }

  if (!(r.diag_inf > 0.0)) {
    r.warnings.push_back(
        "coverage: frame-operator diagonal vanishes on some active bins; not a frame");
  }
  if (!r.suff_conclusive) {
    r.warnings.push_back(
        "sufficient lower bound is not positive; the condition is inconclusive");
  }
  if (!r.emp_converged) {
    r.warnings.push_back("power iteration did not converge; bounds are the last iterate");
  }
  if (!r.painless) {
    std::size_t count = 0;
    for (const auto& [m, ok] : r.channel_painless) count += ok ? 0 : 1;
    r.warnings.push_back(std::to_string(count) +
                         " channel(s) exceed the painless support condition");
  }
  if (bank.warping().constant_is_searched()) {
    r.warnings.push_back("moderateness constant C = " +
                         std::to_string(bank.warping().moderateness_constant()) +
                         " was found by grid search");
  }
  return r;
}

std::vector<SweepRow> scaling_sweep(const WarpedBank& bank, std::span<const int> factors,
                                    const EmpiricalOptions& options) {
  std::vector<SweepRow> rows;
  for (int factor : factors) {
    const WarpedBank scaled = factor == 1 ? bank : scale_factors(bank, factor);
    const EmpiricalBounds e = empirical_bounds(scaled, options);
    rows.push_back({factor, e.lower, e.upper, tightness_ratio(e.lower, e.upper),
                    scaled.painless()});
  }
  return rows;
}

}  // namespace warpbank
