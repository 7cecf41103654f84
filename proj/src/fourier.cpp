#include "fracq/fourier.hpp"

#include <fftw3.h>

#include <map>
#include <memory>
#include <mutex>
#include <utility>

namespace fracq::fourier {
namespace {

// fftw planning is not thread-safe; execution through the new-array interface
// is. Plans are created once per (size, direction) under a lock and reused.
class PlanCache {
public:
  static PlanCache& instance() {
    static PlanCache cache;
    return cache;
  }

  fftw_plan get(int n, int sign) {
    std::lock_guard lock(mutex_);
    auto key = std::make_pair(n, sign);
    if (auto it = plans_.find(key); it != plans_.end()) return it->second;
    std::unique_ptr<fftw_complex[], decltype(&fftw_free)> buffer(
        fftw_alloc_complex(static_cast<std::size_t>(n)), &fftw_free);
    fftw_plan plan = fftw_plan_dft_1d(n, buffer.get(), buffer.get(), sign,
                                      FFTW_ESTIMATE | FFTW_UNALIGNED);
    plans_.emplace(key, plan);
    return plan;
  }

  ~PlanCache() {
    for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
  }

private:
  std::mutex mutex_;
  std::map<std::pair<int, int>, fftw_plan> plans_;
};

void execute(std::span<std::complex<double>> data, int sign) {
  if (data.empty()) return;
  const int n = static_cast<int>(data.size());
  fftw_plan plan = PlanCache::instance().get(n, sign);
  auto* ptr = reinterpret_cast<fftw_complex*>(data.data());
  fftw_execute_dft(plan, ptr, ptr);
}

}  // namespace

void forward_inplace(std::span<std::complex<double>> data) { execute(data, FFTW_FORWARD); }

void inverse_inplace(std::span<std::complex<double>> data) {
  execute(data, FFTW_BACKWARD);
  const double scale = 1.0 / static_cast<double>(data.size());
  for (auto& v : data) v *= scale;
}

std::vector<std::complex<double>> forward(std::span<const std::complex<double>> data) {
  std::vector<std::complex<double>> out(data.begin(), data.end());
  forward_inplace(out);
  return out;
}

std::vector<std::complex<double>> inverse(std::span<const std::complex<double>> data) {
  std::vector<std::complex<double>> out(data.begin(), data.end());
  inverse_inplace(out);
  return out;
}

}  // namespace fracq::fourier
