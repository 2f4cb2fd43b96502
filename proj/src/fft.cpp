#include "warpbank/fft.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>
#include <utility>

namespace warpbank {

namespace {

// The FFTW planner is not thread-safe; execution of an existing plan on new
// arrays is.
class PlanCache {
 public:
  ~PlanCache() {
    for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
  }

  fftw_plan get(int n, int sign) {
    std::lock_guard lock(mutex_);
    auto it = plans_.find({n, sign});
    if (it != plans_.end()) return it->second;
    auto* scratch = fftw_alloc_complex(static_cast<std::size_t>(n));
    fftw_plan plan = fftw_plan_dft_1d(n, scratch, scratch, sign,
                                      FFTW_ESTIMATE | FFTW_UNALIGNED);
    fftw_free(scratch);
    plans_.emplace(std::make_pair(n, sign), plan);
    return plan;
  }

 private:
  std::mutex mutex_;
  std::map<std::pair<int, int>, fftw_plan> plans_;
};

PlanCache& cache() {
  static PlanCache instance;
  return instance;
}

void run(std::span<cplx> data, int sign) {
  if (data.size() <= 1) return;
  fftw_plan plan = cache().get(static_cast<int>(data.size()), sign);
  auto* ptr = reinterpret_cast<fftw_complex*>(data.data());
  fftw_execute_dft(plan, ptr, ptr);
}

}  // namespace

void fft_forward(std::span<cplx> data) { run(data, FFTW_FORWARD); }

void fft_backward(std::span<cplx> data) { run(data, FFTW_BACKWARD); }

std::vector<cplx> unitary_spectrum(std::span<const cplx> signal) {
  std::vector<cplx> out(signal.begin(), signal.end());
  fft_forward(out);
  const double scale = 1.0 / std::sqrt(static_cast<double>(out.size()));
  for (auto& v : out) v *= scale;
  return out;
}

std::vector<cplx> unitary_inverse(std::span<const cplx> spectrum) {
  std::vector<cplx> out(spectrum.begin(), spectrum.end());
  fft_backward(out);
  const double scale = 1.0 / std::sqrt(static_cast<double>(out.size()));
  for (auto& v : out) v *= scale;
  return out;
}

}  // namespace warpbank
