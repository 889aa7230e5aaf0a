#include "toeptik/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <utility>

namespace toeptik {
namespace {

// FFTW's planner is not thread-safe; execution of an existing plan on new
// arrays is. Plans are created once per (length, sign) and never mutated.
class PlanCache {
 public:
  ~PlanCache() {
    for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
  }

  fftw_plan get(std::size_t length, int sign) {
    std::lock_guard<std::mutex> lock(mutex_);
    auto key = std::make_pair(length, sign);
    auto it = plans_.find(key);
    if (it != plans_.end()) return it->second;
    CVector scratch(length);
    auto* buf = reinterpret_cast<fftw_complex*>(scratch.data());
    fftw_plan plan = fftw_plan_dft_1d(static_cast<int>(length), buf, buf, sign,
                                      FFTW_ESTIMATE | FFTW_UNALIGNED);
    plans_.emplace(key, plan);
    return plan;
  }

 private:
  std::mutex mutex_;
  std::map<std::pair<std::size_t, int>, fftw_plan> plans_;
};

PlanCache& plan_cache() {
  static PlanCache cache;
  return cache;
}

void execute(std::span<cplx> data, int sign) {
  if (data.size() <= 1) return;
  auto* buf = reinterpret_cast<fftw_complex*>(data.data());
  fftw_execute_dft(plan_cache().get(data.size(), sign), buf, buf);
}

}  // namespace

std::size_t smooth_length(std::size_t min_length) {
  if (min_length <= 1) return 1;
  for (std::size_t n = min_length;; ++n) {
    std::size_t r = n;
    for (std::size_t f : {2u, 3u, 5u, 7u})
      while (r % f == 0) r /= f;
    if (r == 1) return n;
  }
}

void transform_forward(std::span<cplx> data) { execute(data, FFTW_BACKWARD); }

void transform_inverse(std::span<cplx> data) {
  execute(data, FFTW_FORWARD);
  const double scale = 1.0 / static_cast<double>(data.size());
  for (auto& v : data) v *= scale;
}

CVector evaluate_on_roots(std::span<const cplx> coeffs, std::size_t length) {
  CVector out(length, cplx{0.0, 0.0});
  if (length == 0) return out;
  for (std::size_t i = 0; i < coeffs.size(); ++i) out[i % length] += coeffs[i];
  transform_forward(out);
  return out;
}

}  // namespace toeptik
