#include "tickcoint/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <utility>

namespace tickcoint::fft {

namespace {

// FFTW planning is not thread-safe; execution of an existing plan on fresh
// arrays is. Plans live for the process lifetime.
class PlanCache {
 public:
  fftw_plan get(std::size_t n, int sign) {
    std::lock_guard<std::mutex> lock(mutex_);
    auto key = std::make_pair(n, sign);
    if (auto it = plans_.find(key); it != plans_.end()) return it->second;
    auto* in = fftw_alloc_complex(n);
    auto* out = fftw_alloc_complex(n);
    fftw_plan p = fftw_plan_dft_1d(static_cast<int>(n), in, out, sign,
                                   FFTW_ESTIMATE | FFTW_UNALIGNED);
    fftw_free(in);
    fftw_free(out);
    plans_.emplace(key, p);
    return p;
  }

  ~PlanCache() {
    for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
  }

 private:
  std::mutex mutex_;
  std::map<std::pair<std::size_t, int>, fftw_plan> plans_;
};

PlanCache& cache() {
  static PlanCache c;
  return c;
}

std::vector<Complex> run(std::span<const Complex> x, int sign) {
  const std::size_t n = x.size();
  std::vector<Complex> in(x.begin(), x.end());
  std::vector<Complex> out(n);
  if (n == 0) return out;
  fftw_plan p = cache().get(n, sign);
  fftw_execute_dft(p, reinterpret_cast<fftw_complex*>(in.data()),
                   reinterpret_cast<fftw_complex*>(out.data()));
  return out;
}

}  // namespace

std::vector<Complex> forward(std::span<const Complex> x) { return run(x, FFTW_FORWARD); }

std::vector<Complex> backward(std::span<const Complex> x) { return run(x, FFTW_BACKWARD); }

std::vector<Complex> forward_real(std::span<const double> x) {
  std::vector<Complex> c(x.begin(), x.end());
  return run(c, FFTW_FORWARD);
}

std::size_t next_pow2(std::size_t n) noexcept {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

}  // namespace tickcoint::fft
