#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "warpbank/bank.hpp"
#include "warpbank/fft.hpp"

namespace warpbank {

struct BoundPair {
  double lower = 0.0;
  double upper = 0.0;
};

/// Min and max of the frame-operator diagonal over the active bins.
BoundPair diagonal_bounds(const WarpedBank& bank);

/// Daubechies-type sufficient bounds, evaluated from the closed-form channel
/// responses on a grid `oversample` times denser than the bins:
///   lower = min_t sum_m (|g_m(t)|^2 - sum_{k != 0} |g_m(t) g_m(t - k/a_m)|) / a_m
///   upper = max_t sum_m sum_k |g_m(t) g_m(t - k/a_m)| / a_m
/// Alias frequencies wrap around the sampling rate like the discrete bins.
/// A lower value <= 0 is inconclusive, not a proof that no frame exists.
BoundPair sufficient_bounds(const WarpedBank& bank, int oversample = 8);

struct PowerIterationResult {
  double eigenvalue = 0.0;
  std::vector<cplx> eigenvector;
  bool converged = false;
  int iterations = 0;
  double residual = 0.0;
};

using LinearOperator = std::function<std::vector<cplx>(std::span<const cplx>)>;

/// Power iteration for the largest eigenvalue of a Hermitian positive
/// semidefinite operator. Stops when ||A x - rho x|| <= tol * scale, where
/// scale defaults to |rho|. `start` fixes the support of the iterates.
PowerIterationResult power_iteration(const LinearOperator& op,
                                     std::vector<cplx> start, double tol,
                                     int max_iter, double scale = 0.0);

struct EmpiricalOptions {
  double tol = 1e-8;
  int max_iter = 10000;
  std::uint64_t seed = 0x5eed;
  bool allow_fast_path = true;
};

struct EmpiricalBounds {
  double lower = 0.0;
  double upper = 0.0;
  bool converged = true;
  bool fast_path = false;
  int iterations = 0;
};

/// Extreme eigenvalues of the frame operator on the active-bin subspace.
/// Painless banks read them off the diagonal; otherwise the upper bound comes
/// from power iteration on S and the lower one from power iteration on
/// upper * I - S. Non-convergence is reported, not thrown.
EmpiricalBounds empirical_bounds(const WarpedBank& bank,
                                 const EmpiricalOptions& options = {});

enum class DecayVerdict { CompactSupport, Satisfied, Violated };

struct DecayReport {
  DecayVerdict verdict = DecayVerdict::CompactSupport;
  double required_exponent = 0.0;       // 1 + eps
  double linear_exponent = 0.0;         // decay in (1 + |t|)
  double warped_exponent = 0.0;         // decay in (1 + |F^-1(t)|)
  std::string summary;
};

/// Advisory check of theta in O((1+|t|)^(-1-eps)) and
/// theta in O((1+|F^-1(t)|)^(-1-eps)).
DecayReport decay_check(const PrototypeWindow& window, const WarpingFunction& warp,
                        double eps);
DecayReport decay_check(const std::function<double(double)>& probe,
                        const WarpingFunction& warp, double eps);

std::string_view to_string(DecayVerdict verdict);

struct FrameReport {
  double diag_inf = 0.0;
  double diag_sup = 0.0;
  double suff_lower = 0.0;
  double suff_upper = 0.0;
  bool suff_conclusive = false;  // suff_lower > 0
  double emp_lower = 0.0;
  double emp_upper = 0.0;
  bool emp_converged = true;
  double tightness_ratio = 0.0;  // emp_upper / emp_lower, inf if not a frame
  bool painless = false;
  std::vector<std::pair<int, bool>> channel_painless;
  std::vector<std::string> warnings;
};

struct ReportOptions {
  int oversample = 8;
  EmpiricalOptions empirical;
};

FrameReport frame_report(const WarpedBank& bank, const ReportOptions& options = {});

double tightness_ratio(double lower, double upper);

struct SweepRow {
  int factor = 1;
  double emp_lower = 0.0;
  double emp_upper = 0.0;
  double tightness_ratio = 0.0;
  bool painless = false;
};

/// Empirical bounds after multiplying every a_m by each factor.
std::vector<SweepRow> scaling_sweep(const WarpedBank& bank, std::span<const int> factors,
                                    const EmpiricalOptions& options = {});

}  // namespace warpbank
